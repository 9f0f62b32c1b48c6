#include "trimclt/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "trimclt/errors.hpp"

namespace trimclt {

std::string experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Rho: return "rho";
    case ExperimentKind::RhoTilde: return "rho_tilde";
    case ExperimentKind::Coverage: return "coverage";
    case ExperimentKind::Threshold: return "threshold";
    case ExperimentKind::VecMean: return "vecmean";
    case ExperimentKind::LemmaSuite: return "lemma_suite";
  }
  return "?";
}

namespace {

std::string trim_ws(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_ws(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class KeyReader {
 public:
  explicit KeyReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) {
    used_.insert(key);
    return kv_.count(key) > 0;
  }
  std::string str(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
  }
  double num(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "' is not a number: '" +
                        it->second + "'");
    }
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    double v = num(key, static_cast<double>(fallback));
    return static_cast<std::int64_t>(v);
  }
  std::vector<double> num_list(const std::string& key,
                               std::vector<double> fallback) {
    used_.insert(key);
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    for (const auto& tok : split_list(it->second)) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' has a bad entry: '" + tok + "'");
      }
    }
    if (out.empty()) throw ConfigError("config key '" + key + "' is an empty list");
    return out;
  }
  std::vector<std::int64_t> int_list(const std::string& key,
                                     std::vector<std::int64_t> fallback) {
    auto doubles = num_list(key, {});
    if (doubles.empty()) return fallback;
    std::vector<std::int64_t> out;
    for (double v : doubles) out.push_back(static_cast<std::int64_t>(v));
    return out;
  }
  std::vector<std::string> str_list(const std::string& key,
                                    std::vector<std::string> fallback) {
    used_.insert(key);
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    auto out = split_list(it->second);
    if (out.empty()) throw ConfigError("config key '" + key + "' is an empty list");
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_) {
      if (!used_.count(key)) {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

Family parse_family(const std::string& name) {
  if (name == "gaussian") return Family::GaussianEquicorrelated;
  if (name == "student_t") return Family::StudentT;
  if (name == "pareto") return Family::SymmetricPareto;
  if (name == "lognormal") return Family::LogNormalCentered;
  throw ConfigError("unknown distribution.family '" + name + "'");
}

AdversaryKind parse_adversary(const std::string& name) {
  if (name == "none") return AdversaryKind::None;
  if (name == "large_outlier") return AdversaryKind::LargeOutlier;
  if (name == "opposite_shift") return AdversaryKind::OppositeShift;
  if (name == "max_spread") return AdversaryKind::MaxSpread;
  throw ConfigError("unknown adversary.kind '" + name + "'");
}

TargetRows parse_target(const std::string& name) {
  if (name == "largest_inf_norm") return TargetRows::LargestInfNorm;
  if (name == "first") return TargetRows::First;
  if (name == "random") return TargetRows::Random;
  throw ConfigError("unknown adversary.target '" + name + "'");
}

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "rho") return ExperimentKind::Rho;
  if (name == "rho_tilde") return ExperimentKind::RhoTilde;
  if (name == "coverage") return ExperimentKind::Coverage;
  if (name == "threshold") return ExperimentKind::Threshold;
  if (name == "vecmean") return ExperimentKind::VecMean;
  if (name == "lemma_suite") return ExperimentKind::LemmaSuite;
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace

DistributionSpec ExperimentConfig::spec_for(std::int64_t d) const {
  if (scales.size() == 1) {
    return DistributionSpec::make(family, family_param, d, scales[0]);
  }
  if (static_cast<std::int64_t>(scales.size()) != d) {
    throw ConfigError("distribution.scale list must match d = " + std::to_string(d));
  }
  Eigen::VectorXd v(d);
  for (std::int64_t j = 0; j < d; ++j) v[j] = scales[static_cast<std::size_t>(j)];
  return DistributionSpec::make(family, family_param, d, v);
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> out;
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto join_num = [&](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      s += num(xs[i]);
    }
    return s;
  };
  auto join_int = [](const std::vector<std::int64_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(xs[i]);
    }
    return s;
  };
  out["experiment"] = experiment_name(experiment);
  out["master_seed"] = std::to_string(master_seed);
  out["distribution.family"] = family_name(family);
  out["distribution.param"] = num(family_param);
  out["distribution.scale"] = join_num(scales);
  out["epsilon"] = num(epsilon);
  out["p"] = num(p);
  out["level"] = num(level);
  out["n_grid"] = join_int(n_grid);
  out["d_grid"] = join_int(d_grid);
  out["adversary.kind"] = adversary_name(adversary.kind);
  out["adversary.magnitude"] = num(adversary.magnitude);
  out["adversary.target"] =
      adversary.target == TargetRows::LargestInfNorm
          ? "largest_inf_norm"
          : (adversary.target == TargetRows::First ? "first" : "random");
  out["replications.r1"] = std::to_string(r1);
  out["replications.r2"] = std::to_string(r2);
  out["replications.r_boot"] = std::to_string(r_boot);
  out["replications.r_outer"] = std::to_string(r_outer);
  out["replications.samples"] = std::to_string(samples);
  {
    std::string s;
    for (std::size_t i = 0; i < estimators.size(); ++i) {
      if (i) s += ",";
      s += estimators[i];
    }
    out["estimators"] = s;
  }
  {
    std::string s;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (i) s += ",";
      s += bootstrap_kind_name(kinds[i]);
    }
    out["kinds"] = s;
  }
  out["plan"] = plan_rule;
  out["overrides.k"] = std::to_string(override_k);
  out["overrides.m"] = num(override_m);
  out["overrides.c_knob"] = num(c_knob);
  out["threshold.delta_grid"] = join_num(delta_grid);
  out["vecmean.norm"] = vecmean_norm;
  out["vecmean.s_file"] = vecmean_s_file;
  out["vecmean.r_reps"] = std::to_string(vecmean_reps);
  out["lemma.scope"] = lemma_scope;
  out["lemma.instances"] = std::to_string(lemma_instances);
  out["lemma.draws"] = std::to_string(lemma_draws);
  return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim_ws(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not 'key = value': '" + line + "'");
    }
    std::string key = trim_ws(line.substr(0, eq));
    std::string value = trim_ws(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    }
    if (kv.count(key)) {
      throw ConfigError("duplicate config key '" + key + "'");
    }
    kv[key] = value;
  }

  KeyReader r(std::move(kv));
  ExperimentConfig cfg;
  if (!r.has("experiment")) throw ConfigError("missing required key 'experiment'");
  cfg.experiment = parse_experiment(r.str("experiment", ""));
  cfg.master_seed = static_cast<std::uint64_t>(r.num("master_seed", 0));

  cfg.family = parse_family(r.str("distribution.family", "gaussian"));
  cfg.family_param = r.num("distribution.param", 0.0);
  cfg.scales = r.num_list("distribution.scale", {1.0});

  cfg.epsilon = r.num("epsilon", 0.0);
  cfg.p = r.num("p", 4.0);
  cfg.level = r.num("level", 0.9);
  cfg.n_grid = r.int_list("n_grid", {1000});
  cfg.d_grid = r.int_list("d_grid", {10});

  cfg.adversary.kind = parse_adversary(r.str("adversary.kind", "none"));
  cfg.adversary.magnitude = r.num("adversary.magnitude", 1e6);
  cfg.adversary.target = parse_target(r.str("adversary.target", "largest_inf_norm"));

  cfg.r1 = r.integer("replications.r1", 1000);
  cfg.r2 = r.integer("replications.r2", 1000);
  cfg.r_boot = r.integer("replications.r_boot", 1000);
  cfg.r_outer = r.integer("replications.r_outer", 200);
  cfg.samples = r.integer("replications.samples", 20);

  cfg.estimators = r.str_list("estimators", {"trimmed"});
  for (const auto& e : cfg.estimators) {
    if (e != "trimmed" && e != "empirical") {
      throw ConfigError("estimators entries must be 'trimmed' or 'empirical', got '" + e + "'");
    }
  }
  auto kind_names = r.str_list("kinds", {"empirical"});
  cfg.kinds.clear();
  for (const auto& name : kind_names) {
    if (name == "empirical") cfg.kinds.push_back(BootstrapKind::Empirical);
    else if (name == "multiplier") cfg.kinds.push_back(BootstrapKind::GaussianMultiplier);
    else throw ConfigError("kinds entries must be 'empirical' or 'multiplier', got '" + name + "'");
  }
  cfg.plan_rule = r.str("plan", "gaussian");
  if (cfg.plan_rule != "gaussian" && cfg.plan_rule != "bootstrap") {
    throw ConfigError("plan must be 'gaussian' or 'bootstrap'");
  }

  cfg.override_k = r.integer("overrides.k", -1);
  cfg.override_m = r.num("overrides.m", -1.0);
  cfg.c_knob = r.num("overrides.c_knob", 1.0);

  cfg.delta_grid = r.num_list("threshold.delta_grid", {-0.5, 0.5});

  cfg.vecmean_norm = r.str("vecmean.norm", "linf");
  cfg.vecmean_s_file = r.str("vecmean.s_file", "");
  cfg.vecmean_reps = r.integer("vecmean.r_reps", 200);
  if (cfg.vecmean_norm != "linf" && cfg.vecmean_norm != "file") {
    throw ConfigError("vecmean.norm must be 'linf' or 'file'");
  }

  cfg.lemma_scope = r.str("lemma.scope", "all");
  cfg.lemma_instances = r.integer("lemma.instances", 500);
  cfg.lemma_draws = r.integer("lemma.draws", 10000);

  r.reject_unknown();

  if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 0.5)) {
    throw ConfigError("epsilon must lie in [0, 1/2)");
  }
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
    throw ConfigError("level must lie in (0,1)");
  }
  if (cfg.n_grid.empty()) throw ConfigError("n_grid must be nonempty");
  if (cfg.d_grid.empty()) throw ConfigError("d_grid must be nonempty");
  cfg.spec_for(cfg.d_grid.front());  // validates family parameters
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace trimclt
