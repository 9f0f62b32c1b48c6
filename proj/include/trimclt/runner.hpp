#ifndef TRIMCLT_RUNNER_HPP
#define TRIMCLT_RUNNER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trimclt/config.hpp"
#include "trimclt/diagnostics.hpp"

namespace trimclt {

/// One results.csv row. The schema is stable:
/// experiment,n,d,p,epsilon,estimator,k,M,rho_hat,stderr,dkw_band,runtime_ms,seed
/// runtime_ms is written as 0 so reruns are byte-identical; measured times
/// live in report.json.
struct CsvRow {
  std::string experiment;
  std::int64_t n = 0, d = 0;
  double p = 0.0, epsilon = 0.0;
  std::string estimator;
  std::int64_t k = 0;
  double trunc_level = 0.0;
  double rho_hat = 0.0, stderr_ = 0.0, dkw_band = 0.0;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms_actual = 0;  // report.json only
};

std::string csv_header();
std::string format_csv(const std::vector<CsvRow>& rows);

struct RunResult {
  std::vector<CsvRow> rows;
  std::string report_json;  // full echo + measured runtimes + notes
};

/// Executes the configured experiment. Throws the library error types; the
/// CLI maps them to exit codes.
RunResult run_experiment(const ExperimentConfig& cfg, unsigned threads);

/// Writes results.csv and report.json under out_dir (created if missing).
void write_outputs(const RunResult& result, const std::string& out_dir);

struct LemmaScenarioResult {
  std::string scenario;  // e.g. "bounding:pareto3.5:eps0.05:n1000:d50"
  LemmaReport report;
  std::int64_t n = 0, d = 0;
  double p = 0.0, epsilon = 0.0;
  std::int64_t k = 0;
  double trunc_level = 0.0;
};

/// Default scenario suite for the deterministic and probabilistic lemma
/// checks. `scope` filters by lemma name ("all" keeps everything; an empty
/// or unmatched scope yields no checks).
std::vector<LemmaScenarioResult> run_lemma_suite(const std::string& scope,
                                                 std::int64_t instances,
                                                 std::int64_t draws,
                                                 std::uint64_t seed,
                                                 unsigned threads);

/// CLI verb: prints one line per scenario plus worstSlack, returns 0 iff all
/// selected checks pass (0 with a warning when nothing matched).
int check_invariants(const std::string& scope, std::int64_t instances,
                     std::int64_t draws, std::uint64_t seed, unsigned threads,
                     std::ostream& out);

}  // namespace trimclt

#endif
