#include "trimclt/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "trimclt/errors.hpp"
#include "trimclt/experiments.hpp"
#include "trimclt/numeric.hpp"
#include "trimclt/parallel.hpp"

namespace trimclt {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return std::string(buf);
}

TrimPlan build_plan(const ExperimentConfig& cfg, const DistributionSpec& spec,
                    std::int64_t n, std::int64_t d) {
  Moments mom = analytic_moments(spec, cfg.p);
  TrimPlan plan;
  if (cfg.override_k >= 0) {
    plan.epsilon = cfg.epsilon;
    plan.p = cfg.p;
    plan.n = n;
    plan.d = d;
    plan.nu_p = mom.nu_p;
    plan.k = cfg.override_k;
    plan.tail_budget = gaussian_tail_budget(n, d, cfg.p);
    plan.trunc_level = truncation_level(n, d, cfg.p, mom.nu_p);
    plan.phi = static_cast<double>(plan.k) / static_cast<double>(n);
    if (2 * plan.k >= n) {
      throw InfeasibleTrim("overrides.k=" + std::to_string(plan.k) +
                           " is >= n/2 for n=" + std::to_string(n));
    }
  } else if (cfg.plan_rule == "bootstrap") {
    plan = plan_bootstrap(n, d, cfg.epsilon, cfg.p, mom.nu_p);
  } else {
    plan = plan_gaussian(n, d, cfg.epsilon, cfg.p, mom.nu_p);
  }
  if (cfg.override_m > 0.0) plan.trunc_level = cfg.override_m;
  return plan;
}

TrimPlan empirical_arm(const TrimPlan& plan) {
  TrimPlan arm = plan;
  arm.k = 0;
  arm.phi = 0.0;
  return arm;
}

CsvRow row_from_report(const std::string& experiment,
                       const std::string& estimator,
                       const KolmogorovReport& rep) {
  CsvRow row;
  row.experiment = experiment;
  row.n = rep.n;
  row.d = rep.d;
  row.p = rep.p;
  row.epsilon = rep.epsilon;
  row.estimator = estimator;
  row.k = rep.k;
  row.trunc_level = rep.trunc_level;
  row.rho_hat = rep.rho_hat;
  row.stderr_ = rep.stderr_;
  row.dkw_band = rep.dkw_band;
  row.seed = rep.seed;
  row.runtime_ms_actual = rep.runtime_ms;
  return row;
}

void run_rho(const ExperimentConfig& cfg, unsigned threads, RngStream master,
             std::vector<CsvRow>& rows, json& notes) {
  std::uint64_t cell_id = 0;
  for (std::int64_t d : cfg.d_grid) {
    DistributionSpec spec = cfg.spec_for(d);
    Moments mom = analytic_moments(spec, cfg.p);
    for (std::int64_t n : cfg.n_grid) {
      RngStream cell = master.split(cell_id++);
      TrimPlan plan = build_plan(cfg, spec, n, d);

      std::vector<TrimPlan> arms;
      for (const auto& est : cfg.estimators) {
        arms.push_back(est == "empirical" ? empirical_arm(plan) : plan);
      }
      auto start = Clock::now();
      auto stats = replicate_sup_stats(spec, cfg.epsilon, cfg.adversary, arms,
                                       cfg.r1, cell.split(1), threads);
      CovarianceModel model = cholesky_with_jitter(mom.sigma);
      auto gauss =
          gaussian_sup_draws_parallel(model, cfg.r2, cell.split(2), threads);
      auto total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          Clock::now() - start)
                          .count();
      if (model.jitter > 0.0) {
        notes.push_back({{"cell", cell_id - 1}, {"jitter", model.jitter}});
      }
      for (std::size_t a = 0; a < arms.size(); ++a) {
        KolmogorovReport rep;
        rep.rho_hat = two_sample_ks(stats[a], gauss);
        rep.stderr_ = 0.0;
        {
          // 10-batch split over contiguous index blocks
          std::vector<double> ks(10);
          for (int t = 0; t < 10; ++t) {
            std::size_t alo = stats[a].size() * t / 10,
                        ahi = stats[a].size() * (t + 1) / 10;
            std::size_t glo = gauss.size() * t / 10,
                        ghi = gauss.size() * (t + 1) / 10;
            ks[static_cast<std::size_t>(t)] = two_sample_ks(
                std::span<const double>(stats[a].data() + alo, ahi - alo),
                std::span<const double>(gauss.data() + glo, ghi - glo));
          }
          rep.stderr_ = std::sqrt(sample_variance(ks) / 10.0);
        }
        rep.dkw_band = dkw_band(cfg.r1, cfg.r2);
        rep.n = n;
        rep.d = d;
        rep.p = cfg.p;
        rep.epsilon = cfg.epsilon;
        rep.k = arms[a].k;
        rep.trunc_level = arms[a].trunc_level;
        rep.seed = cell.key();
        rep.runtime_ms = total_ms;
        rows.push_back(row_from_report("rho", cfg.estimators[a], rep));
      }
    }
  }
}

void run_rho_tilde(const ExperimentConfig& cfg, unsigned threads,
                   RngStream master, std::vector<CsvRow>& rows) {
  std::uint64_t cell_id = 0;
  for (std::int64_t d : cfg.d_grid) {
    DistributionSpec spec = cfg.spec_for(d);
    for (std::int64_t n : cfg.n_grid) {
      TrimPlan plan = build_plan(cfg, spec, n, d);
      for (BootstrapKind kind : cfg.kinds) {
        RngStream cell = master.split(cell_id++);
        for (std::int64_t s = 0; s < cfg.samples; ++s) {
          KolmogorovReport rep =
              estimate_rho_tilde(spec, cfg.epsilon, cfg.adversary, plan, kind,
                                 cfg.r_boot, cfg.r2, cell, s, threads);
          rows.push_back(row_from_report(
              "rho_tilde", "boot_" + bootstrap_kind_name(kind), rep));
        }
      }
    }
  }
}

void run_coverage(const ExperimentConfig& cfg, unsigned threads,
                  RngStream master, std::vector<CsvRow>& rows) {
  std::uint64_t cell_id = 0;
  for (std::int64_t d : cfg.d_grid) {
    DistributionSpec spec = cfg.spec_for(d);
    for (std::int64_t n : cfg.n_grid) {
      TrimPlan plan = build_plan(cfg, spec, n, d);
      for (const auto& est : cfg.estimators) {
        TrimPlan arm = est == "empirical" ? empirical_arm(plan) : plan;
        for (BootstrapKind kind : cfg.kinds) {
          RngStream cell = master.split(cell_id++);
          CoverageReport rep =
              coverage_experiment(spec, cfg.epsilon, cfg.adversary, arm, kind,
                                  cfg.level, cfg.r_outer, cfg.r_boot, cell,
                                  threads);
          CsvRow row;
          row.experiment = "coverage";
          row.n = n;
          row.d = d;
          row.p = cfg.p;
          row.epsilon = cfg.epsilon;
          row.estimator = est + "_" + bootstrap_kind_name(kind);
          row.k = arm.k;
          row.trunc_level = arm.trunc_level;
          row.rho_hat = rep.coverage;
          row.stderr_ = rep.stderr_;
          row.dkw_band = cfg.level;  // nominal level for reference
          row.seed = cell.key();
          row.runtime_ms_actual = rep.runtime_ms;
          rows.push_back(row);
        }
      }
    }
  }
}

void run_threshold(const ExperimentConfig& cfg, unsigned threads,
                   RngStream master, std::vector<CsvRow>& rows, json& notes) {
  auto table = threshold_experiment(cfg.p, cfg.delta_grid, cfg.n_grid, cfg.r1,
                                    master, threads);
  for (const auto& cell : table) {
    char tag[48];
    std::snprintf(tag, sizeof(tag), "@d%+.2f", cell.delta);
    rows.push_back(
        row_from_report("threshold", std::string("trimmed") + tag, cell.trimmed));
    rows.push_back(row_from_report("threshold", std::string("empirical") + tag,
                                   cell.empirical));
    if (cell.d_clamped) {
      notes.push_back({{"n", cell.n},
                       {"delta", cell.delta},
                       {"d_clamped_to", cell.d}});
    }
  }
}

NormSpecFinite load_norm_spec(const ExperimentConfig& cfg, std::int64_t d) {
  if (cfg.vecmean_norm == "linf") return NormSpecFinite::linf(d);
  if (cfg.vecmean_s_file.empty()) {
    throw ConfigError("vecmean.norm=file requires vecmean.s_file");
  }
  std::ifstream in(cfg.vecmean_s_file);
  if (!in) throw ConfigError("cannot open vecmean.s_file '" + cfg.vecmean_s_file + "'");
  NormSpecFinite s;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<double> entries;
    double v;
    while (ss >> v) entries.push_back(v);
    if (entries.empty()) continue;
    if (static_cast<std::int64_t>(entries.size()) != d) {
      throw ConfigError("vecmean.s_file rows must have d = " + std::to_string(d) +
                        " entries");
    }
    Eigen::VectorXd vec(d);
    for (std::int64_t j = 0; j < d; ++j) vec[j] = entries[static_cast<std::size_t>(j)];
    s.directions.push_back(vec);
  }
  s.validate();
  return s;
}

void run_vecmean(const ExperimentConfig& cfg, unsigned threads,
                 RngStream master, std::vector<CsvRow>& rows, json& notes) {
  const std::int64_t d = cfg.d_grid.front();
  DistributionSpec spec = cfg.spec_for(d);
  NormSpecFinite s = load_norm_spec(cfg, d);
  auto start = Clock::now();
  auto cells = vecmean_experiment(spec, s, cfg.epsilon, cfg.adversary,
                                  cfg.n_grid, cfg.p, cfg.c_knob,
                                  cfg.vecmean_reps, master, threads);
  auto total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      Clock::now() - start)
                      .count();
  for (const auto& cell : cells) {
    CsvRow row;
    row.experiment = "vecmean";
    row.n = cell.n;
    row.d = d;
    row.p = cfg.p;
    row.epsilon = cfg.epsilon;
    row.estimator = "minimax_" + cfg.vecmean_norm;
    row.k = cell.k;
    row.trunc_level = 0.0;
    row.rho_hat = cell.median_error;
    row.stderr_ = 0.5 * (cell.q75 - cell.q25);
    row.dkw_band = cell.width_over_sqrt_n;
    row.seed = master.key();
    row.runtime_ms_actual = total_ms;
    rows.push_back(row);
    notes.push_back({{"n", cell.n},
                     {"exact_mismatches", cell.exact_mismatches},
                     {"lemma52_violations", cell.lemma52_violations},
                     {"median_error", cell.median_error},
                     {"width_over_sqrt_n", cell.width_over_sqrt_n}});
  }
}

void run_lemma_rows(const ExperimentConfig& cfg, unsigned threads,
                    RngStream master, std::vector<CsvRow>& rows, json& notes) {
  auto results = run_lemma_suite(cfg.lemma_scope, cfg.lemma_instances,
                                 cfg.lemma_draws, master.key(), threads);
  for (const auto& res : results) {
    CsvRow row;
    row.experiment = "lemma_suite";
    row.n = res.n;
    row.d = res.d;
    row.p = res.p;
    row.epsilon = res.epsilon;
    row.estimator = res.scenario;
    row.k = res.k;
    row.trunc_level = res.trunc_level;
    row.rho_hat = res.report.violation_frequency;
    row.stderr_ = 0.0;
    row.dkw_band = res.report.frequency_allowance;
    row.seed = master.key();
    rows.push_back(row);
    notes.push_back({{"scenario", res.scenario},
                     {"violations", res.report.violations},
                     {"skipped", res.report.skipped},
                     {"instances", res.report.instances_checked},
                     {"worst_slack", res.report.worst_slack},
                     {"passed", res.report.passed}});
  }
}

}  // namespace

std::string csv_header() {
  return "experiment,n,d,p,epsilon,estimator,k,M,rho_hat,stderr,dkw_band,"
         "runtime_ms,seed";
}

std::string format_csv(const std::vector<CsvRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) {
    out += r.experiment;
    out += "," + std::to_string(r.n);
    out += "," + std::to_string(r.d);
    out += "," + fmt_double(r.p);
    out += "," + fmt_double(r.epsilon);
    out += "," + r.estimator;
    out += "," + std::to_string(r.k);
    out += "," + fmt_double(r.trunc_level);
    out += "," + fmt_double(r.rho_hat);
    out += "," + fmt_double(r.stderr_);
    out += "," + fmt_double(r.dkw_band);
    out += ",0";  // deterministic placeholder; measured time in report.json
    out += "," + std::to_string(r.seed);
    out += "\n";
  }
  return out;
}

RunResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  threads = resolve_threads(threads);
  RngStream master(cfg.master_seed);
  RunResult result;
  json notes = json::array();
  auto start = Clock::now();

  switch (cfg.experiment) {
    case ExperimentKind::Rho:
      run_rho(cfg, threads, master, result.rows, notes);
      break;
    case ExperimentKind::RhoTilde:
      run_rho_tilde(cfg, threads, master, result.rows);
      break;
    case ExperimentKind::Coverage:
      run_coverage(cfg, threads, master, result.rows);
      break;
    case ExperimentKind::Threshold:
      run_threshold(cfg, threads, master, result.rows, notes);
      break;
    case ExperimentKind::VecMean:
      run_vecmean(cfg, threads, master, result.rows, notes);
      break;
    case ExperimentKind::LemmaSuite:
      run_lemma_rows(cfg, threads, master, result.rows, notes);
      break;
  }

  auto total_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
          .count();

  json report;
  report["version"] = "0.1.0";
  report["config"] = cfg.echo();
  report["config"]["jitter.initial_factor"] = "1e-12";
  report["config"]["jitter.max_factor"] = "1e-6";
  report["threads"] = threads;
  report["master_seed"] = cfg.master_seed;
  report["runtime_ms_total"] = total_ms;
  json jrows = json::array();
  for (const auto& r : result.rows) {
    jrows.push_back({{"experiment", r.experiment},
                     {"n", r.n},
                     {"d", r.d},
                     {"p", r.p},
                     {"epsilon", r.epsilon},
                     {"estimator", r.estimator},
                     {"k", r.k},
                     {"M", r.trunc_level},
                     {"rho_hat", r.rho_hat},
                     {"stderr", r.stderr_},
                     {"dkw_band", r.dkw_band},
                     {"runtime_ms", r.runtime_ms_actual},
                     {"seed", r.seed}});
  }
  report["rows"] = jrows;
  report["notes"] = notes;
  result.report_json = report.dump(2) + "\n";
  return result;
}

void write_outputs(const RunResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(out_dir + "/results.csv", std::ios::binary);
    if (!csv) throw Error("cannot write " + out_dir + "/results.csv");
    csv << format_csv(result.rows);
  }
  {
    std::ofstream rep(out_dir + "/report.json", std::ios::binary);
    if (!rep) throw Error("cannot write " + out_dir + "/report.json");
    rep << result.report_json;
  }
}

namespace {

struct Scenario {
  std::string lemma;  // scope name
  std::string tag;
};

bool scope_matches(const std::string& scope, const std::string& lemma) {
  return scope == "all" || scope == lemma;
}

}  // namespace

std::vector<LemmaScenarioResult> run_lemma_suite(const std::string& scope,
                                                 std::int64_t instances,
                                                 std::int64_t draws,
                                                 std::uint64_t seed,
                                                 unsigned threads) {
  std::vector<LemmaScenarioResult> results;
  RngStream master(seed);
  std::uint64_t scenario_id = 0;

  // --- bounding lemma: deterministic, many randomized instances ---
  if (scope_matches(scope, "bounding")) {
    const struct {
      Family family;
      double param;
      double p;
      const char* name;
    } fams[] = {
        {Family::GaussianEquicorrelated, 0.0, 4.0, "gaussian"},
        {Family::StudentT, 5.0, 4.0, "student_t5"},
        {Family::SymmetricPareto, 3.5, 3.0, "pareto3.5"},
    };
    for (const auto& fam : fams) {
      for (double eps : {0.0, 0.05}) {
        for (std::int64_t n : {200, 1000}) {
          for (std::int64_t d : {5, 50}) {
            RngStream scen = master.split(scenario_id++);
            DistributionSpec spec = DistributionSpec::make(fam.family, fam.param, d);
            Moments mom = analytic_moments(spec, fam.p);
            TrimPlan plan = lemma_plan(n, d, eps, fam.p, mom.nu_p);
            AdversaryPolicy policy;
            policy.kind = eps > 0.0 ? AdversaryKind::LargeOutlier : AdversaryKind::None;

            std::vector<LemmaReport> reports(static_cast<std::size_t>(instances));
            parallel_for(static_cast<std::size_t>(instances), threads,
                         [&](std::size_t r) {
                           RngStream s = scen.split(r);
                           SampleMatrix clean = sample(spec, n, s.split(0));
                           ContaminatedSample data =
                               contaminate(clean, eps, policy, s.split(1));
                           reports[r] = check_bounding_lemma(data, plan);
                         });
            LemmaReport merged;
            merged.lemma_id = "bounding";
            for (const auto& rep : reports) merge_reports(merged, rep);
            merged.passed = merged.violations == 0;
            char tag[96];
            std::snprintf(tag, sizeof(tag), "bounding:%s:eps%s:n%lld:d%lld",
                          fam.name, fmt_short(eps).c_str(),
                          static_cast<long long>(n), static_cast<long long>(d));
            results.push_back({tag, merged, n, d, fam.p, eps, plan.k,
                               plan.trunc_level});
          }
        }
      }
    }
  }

  // --- Gaussian bounding lemma: multiplier weights, frequency bound 2/n ---
  if (scope_matches(scope, "gaussian-bounding")) {
    for (double eps : {0.0, 0.05}) {
      RngStream scen = master.split(1000 + scenario_id++);
      const std::int64_t n = 500, d = 10;
      DistributionSpec spec =
          DistributionSpec::make(Family::GaussianEquicorrelated, 0.0, d);
      Moments mom = analytic_moments(spec, 4.0);
      TrimPlan plan = lemma_plan(n, d, eps, 4.0, mom.nu_p);
      AdversaryPolicy policy;
      policy.kind = eps > 0.0 ? AdversaryKind::LargeOutlier : AdversaryKind::None;
      SampleMatrix clean = sample(spec, n, scen.split(0));
      ContaminatedSample data = contaminate(clean, eps, policy, scen.split(1));
      LemmaReport rep =
          check_gaussian_bounding_lemma(data, plan, scen.split(2), draws);
      char tag[96];
      std::snprintf(tag, sizeof(tag), "gaussian-bounding:gaussian:eps%s:n500:d10",
                    fmt_short(eps).c_str());
      results.push_back({tag, rep, n, d, 4.0, eps, plan.k, plan.trunc_level});
    }
  }

  // --- counting lemma on fresh samples ---
  if (scope_matches(scope, "counting")) {
    const std::int64_t n = 1000, d = 20;
    DistributionSpec spec = DistributionSpec::make(Family::SymmetricPareto, 3.5, d);
    Moments mom = analytic_moments(spec, 3.0);
    const double m_plan = truncation_level(n, d, 3.0, mom.nu_p);
    const double m_tight =
        mom.nu_p * std::pow(static_cast<double>(n) / 3.0, 1.0 / 3.0);
    int idx = 0;
    for (double m_level : {m_plan, m_tight}) {
      RngStream scen = master.split(2000 + scenario_id++);
      LemmaReport rep = check_counting_lemma(spec, n, 3.0, m_level, draws, scen);
      char tag[96];
      std::snprintf(tag, sizeof(tag), "counting:pareto3.5:%s:n1000:d20",
                    idx++ == 0 ? "planM" : "tightM");
      results.push_back({tag, rep, n, d, 3.0, 0.0, 0, m_level});
    }
  }

  // --- boolean counting lemma ---
  if (scope_matches(scope, "boolean-counting")) {
    RngStream scen = master.split(3000 + scenario_id++);
    const std::int64_t n = 500, d = 50;
    Eigen::VectorXd probs = Eigen::VectorXd::Constant(d, 0.01);
    LemmaReport rep = check_boolean_counting(probs, n, draws, scen);
    results.push_back({"boolean-counting:bernoulli0.01:n500:d50", rep, n, d,
                       0.0, 0.0, 0, 0.0});
  }

  // --- conditional counting on resampled indicators ---
  if (scope_matches(scope, "conditional-counting")) {
    RngStream scen = master.split(4000 + scenario_id++);
    const std::int64_t n = 500, d = 20;
    DistributionSpec spec = DistributionSpec::make(Family::SymmetricPareto, 3.5, d);
    Moments mom = analytic_moments(spec, 3.0);
    // M with n (nu/M)^p ~ 0.3 keeps the conditional budget small but safe.
    const double m_level =
        mom.nu_p * std::pow(static_cast<double>(n) / 0.3, 1.0 / 3.0);
    const std::int64_t t_budget = static_cast<std::int64_t>(
        std::ceil(3.0 * std::log1p(static_cast<double>(d)) +
                  7.0 * static_cast<double>(n) * std::pow(mom.nu_p / m_level, 3.0)));
    LemmaReport rep =
        check_conditional_counting(spec, n, m_level, t_budget, draws / 2, scen);
    results.push_back({"conditional-counting:pareto3.5:n500:d20", rep, n, d, 3.0,
                       0.0, 0, m_level});
  }

  // --- covariance bound over an M-grid ---
  if (scope_matches(scope, "covariance")) {
    const struct {
      Family family;
      double param;
      double p;
      const char* name;
    } fams[] = {
        {Family::SymmetricPareto, 4.0, 3.0, "pareto4"},
        {Family::StudentT, 6.0, 4.0, "student_t6"},
    };
    for (const auto& fam : fams) {
      DistributionSpec spec = DistributionSpec::make(fam.family, fam.param, 4);
      Moments mom = analytic_moments(spec, fam.p);
      const double m0 = truncation_level(1000, 20, fam.p, mom.nu_p);
      LemmaReport merged;
      merged.lemma_id = "covariance_bound";
      double worst_m = 0.0;
      for (int g = 0; g < 10; ++g) {
        double m_level = m0 * std::pow(2.0, -2.0 + 5.0 * g / 9.0);
        LemmaReport rep = check_covariance_bound(spec, fam.p, m_level);
        merge_reports(merged, rep);
        if (rep.worst_slack == merged.worst_slack) worst_m = m_level;
      }
      merged.passed = merged.violations == 0;
      char tag[96];
      std::snprintf(tag, sizeof(tag), "covariance:%s:p%s:10xM", fam.name,
                    fmt_short(fam.p).c_str());
      results.push_back({tag, merged, 0, 4, fam.p, 0.0, 0, worst_m});
    }
  }

  // --- Gaussian comparison trend ---
  if (scope_matches(scope, "gaussian-comparison")) {
    RngStream scen = master.split(5000 + scenario_id++);
    const std::int64_t d = 10;
    Eigen::MatrixXd s1 = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd s2 = s1;
    s2.diagonal().array() += 0.1;
    LemmaReport rep = check_gaussian_comparison(s1, s2, 100000, scen);
    results.push_back({"gaussian-comparison:identity+0.1:d10", rep, 0, d, 0.0,
                       0.0, 0, 0.0});
  }

  return results;
}

int check_invariants(const std::string& scope, std::int64_t instances,
                     std::int64_t draws, std::uint64_t seed, unsigned threads,
                     std::ostream& out) {
  auto results = run_lemma_suite(scope, instances, draws, seed, threads);
  if (results.empty()) {
    out << "warning: no lemma checks matched scope '" << scope << "'\n";
    return 0;
  }
  bool all_pass = true;
  for (const auto& res : results) {
    const auto& r = res.report;
    out << (r.passed ? "[pass] " : "[FAIL] ") << res.scenario
        << " instances=" << r.instances_checked << " violations=" << r.violations
        << " skipped=" << r.skipped;
    if (r.instances_checked > 0 &&
        (r.lemma_id != "bounding" && r.lemma_id != "covariance_bound")) {
      out << " freq=" << r.violation_frequency
          << " allowance=" << r.frequency_allowance;
    }
    out << " worst_slack=" << r.worst_slack;
    if (!r.note.empty()) out << " note=\"" << r.note << "\"";
    out << "\n";
    all_pass = all_pass && r.passed;
  }
  return all_pass ? 0 : 1;
}

}  // namespace trimclt
