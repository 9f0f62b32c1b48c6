#include <CLI11.hpp>
#include <cstdint>
#include <iostream>

#include "trimclt/config.hpp"
#include "trimclt/errors.hpp"
#include "trimclt/parallel.hpp"
#include "trimclt/runner.hpp"
#include "trimclt/svg.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

int run_verb(const std::string& config_path, const std::string& out_dir,
             std::int64_t seed, bool seed_set, unsigned threads) {
  try {
    trimclt::ExperimentConfig cfg = trimclt::load_config(config_path);
    if (seed_set) cfg.master_seed = static_cast<std::uint64_t>(seed);
    trimclt::RunResult result = trimclt::run_experiment(cfg, threads);
    trimclt::write_outputs(result, out_dir);
    std::cout << "wrote " << result.rows.size() << " rows to " << out_dir
              << "/results.csv\n";
    return 0;
  } catch (const trimclt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const trimclt::InfeasibleTrim& e) {
    std::cerr << "infeasible plan: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trimclt: trimmed-mean Gaussian/bootstrap approximation harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::int64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 0;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads,
                    "worker threads (default: TRIMCLT_THREADS or hardware)");
  };

  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override master_seed")
      ->each([&](const std::string&) { seed_set = true; });
  add_threads(run);

  std::string scope = "all";
  std::int64_t instances = 500, draws = 10000;
  std::int64_t inv_seed = 20240501;
  CLI::App* inv = app.add_subcommand(
      "check-invariants", "run the lemma checks and report worst slack");
  inv->add_option("--scope", scope,
                  "bounding | gaussian-bounding | counting | boolean-counting |"
                  " conditional-counting | covariance | gaussian-comparison | all"
                  " (anything else selects nothing)");
  inv->add_option("--instances", instances, "instances per deterministic scenario");
  inv->add_option("--draws", draws, "draws per probabilistic scenario");
  inv->add_option("--seed", inv_seed, "suite seed");
  add_threads(inv);

  std::string csv_path, plot_dir = "plots";
  CLI::App* plot = app.add_subcommand("plot", "render SVG plots from results.csv");
  plot->add_option("--csv", csv_path, "results.csv path")->required();
  plot->add_option("--out", plot_dir, "plot output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_verb(config_path, out_dir, seed, seed_set, threads);

  if (inv->parsed()) {
    try {
      return trimclt::check_invariants(scope, instances, draws,
                                       static_cast<std::uint64_t>(inv_seed),
                                       threads, std::cout);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitNumerical;
    }
  }

  if (plot->parsed()) {
    try {
      int written = trimclt::plot_csv(csv_path, plot_dir);
      std::cout << "wrote " << written << " plots to " << plot_dir << "\n";
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  return 0;
}
