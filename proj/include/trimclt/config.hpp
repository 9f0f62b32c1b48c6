#ifndef TRIMCLT_CONFIG_HPP
#define TRIMCLT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trimclt/bootstrap.hpp"
#include "trimclt/contamination.hpp"
#include "trimclt/distributions.hpp"

namespace trimclt {

enum class ExperimentKind { Rho, RhoTilde, Coverage, Threshold, VecMean, LemmaSuite };

std::string experiment_name(ExperimentKind k);

/// Declarative experiment description, parsed from a dotted key-value file.
/// Unknown keys are hard errors.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Rho;
  std::uint64_t master_seed = 0;

  Family family = Family::GaussianEquicorrelated;
  double family_param = 0.0;
  std::vector<double> scales{1.0};

  double epsilon = 0.0;
  double p = 4.0;
  double level = 0.9;

  std::vector<std::int64_t> n_grid;
  std::vector<std::int64_t> d_grid;

  AdversaryPolicy adversary;

  std::int64_t r1 = 1000;
  std::int64_t r2 = 1000;
  std::int64_t r_boot = 1000;
  std::int64_t r_outer = 200;
  std::int64_t samples = 20;  // rho_tilde sweep size

  std::vector<std::string> estimators{"trimmed"};  // trimmed | empirical
  std::vector<BootstrapKind> kinds{BootstrapKind::Empirical};
  std::string plan_rule = "gaussian";  // gaussian | bootstrap

  std::int64_t override_k = -1;
  double override_m = -1.0;
  double c_knob = 1.0;

  std::vector<double> delta_grid{-0.5, 0.5};  // threshold experiment

  std::string vecmean_norm = "linf";
  std::string vecmean_s_file;
  std::int64_t vecmean_reps = 200;

  std::string lemma_scope = "all";
  std::int64_t lemma_instances = 500;
  std::int64_t lemma_draws = 10000;

  DistributionSpec spec_for(std::int64_t d) const;

  /// Full resolved key set (including defaulted knobs), for report echoes.
  std::map<std::string, std::string> echo() const;
};

/// Parses `key = value` lines with '#' comments. Throws ConfigError with the
/// offending key or line on any problem.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace trimclt

#endif
