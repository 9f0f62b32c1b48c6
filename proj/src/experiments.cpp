#include "trimclt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"
#include "trimclt/parallel.hpp"

namespace trimclt {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

// Batch-split standard error: contiguous index blocks, KS per block pair.
double batch_ks_stderr(const std::vector<double>& a,
                       const std::vector<double>& b, int batches) {
  if (static_cast<int>(a.size()) < batches || static_cast<int>(b.size()) < batches) {
    return 0.0;
  }
  std::vector<double> ks(static_cast<std::size_t>(batches));
  for (int t = 0; t < batches; ++t) {
    std::size_t a_lo = a.size() * t / batches, a_hi = a.size() * (t + 1) / batches;
    std::size_t b_lo = b.size() * t / batches, b_hi = b.size() * (t + 1) / batches;
    ks[static_cast<std::size_t>(t)] = two_sample_ks(
        std::span<const double>(a.data() + a_lo, a_hi - a_lo),
        std::span<const double>(b.data() + b_lo, b_hi - b_lo));
  }
  return std::sqrt(sample_variance(ks) / static_cast<double>(batches));
}

}  // namespace

double two_sample_ks(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("two_sample_ks: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double x;
    if (i < sa.size() && (j >= sb.size() || sa[i] <= sb[j])) {
      x = sa[i];
    } else {
      x = sb[j];
    }
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na -
                                   static_cast<double>(j) / nb));
  }
  return best;
}

double trimmed_sup_statistic(const ContaminatedSample& data,
                             const TrimPlan& plan,
                             const Eigen::VectorXd& true_means) {
  const std::int64_t n = data.n();
  const double root_n = std::sqrt(static_cast<double>(n));
  const std::int64_t denom = n - 2 * plan.k;
  double sup = -std::numeric_limits<double>::infinity();
  std::vector<double> scratch;
  for (std::int64_t j = 0; j < data.d(); ++j) {
    std::span<const double> col(data.values.col(j).data(),
                                static_cast<std::size_t>(n));
    double tm = trimmed_sum(col, plan.k, scratch) / static_cast<double>(denom);
    sup = std::max(sup, root_n * (tm - true_means[j]));
  }
  return sup;
}

double dkw_band(std::int64_t r1, std::int64_t r2) {
  double r = static_cast<double>(std::min(r1, r2));
  return std::sqrt(std::log(2.0 / 0.05) / (2.0 * r));
}

std::vector<double> gaussian_sup_draws_parallel(const CovarianceModel& model,
                                                std::int64_t r_draws,
                                                RngStream stream,
                                                unsigned threads) {
  std::vector<double> out(static_cast<std::size_t>(r_draws));
  const std::int64_t d = model.dim();
  parallel_for(static_cast<std::size_t>(r_draws), threads, [&](std::size_t r) {
    RngStream s = stream.split(r);
    Eigen::VectorXd w(d);
    for (std::int64_t j = 0; j < d; ++j) w[j] = s.next_gaussian();
    out[r] = (model.factor * w).maxCoeff();
  });
  return out;
}

std::vector<std::vector<double>> replicate_sup_stats(
    const DistributionSpec& spec, double epsilon, const AdversaryPolicy& policy,
    const std::vector<TrimPlan>& plans, std::int64_t r1, RngStream stream,
    unsigned threads) {
  const Eigen::VectorXd true_means = Eigen::VectorXd::Zero(spec.d);
  std::vector<std::vector<double>> stats(plans.size());
  for (auto& v : stats) v.resize(static_cast<std::size_t>(r1));
  const std::int64_t n = plans.empty() ? 0 : plans.front().n;
  for (const auto& plan : plans) {
    if (plan.n != n) throw Error("replicate_sup_stats: plans must share n");
  }
  parallel_for(static_cast<std::size_t>(r1), threads, [&](std::size_t r) {
    RngStream s = stream.split(r);
    SampleMatrix clean = sample(spec, n, s.split(0));
    ContaminatedSample data = contaminate(clean, epsilon, policy, s.split(1));
    for (std::size_t a = 0; a < plans.size(); ++a) {
      stats[a][r] = trimmed_sup_statistic(data, plans[a], true_means);
    }
  });
  return stats;
}

KolmogorovReport estimate_rho(const DistributionSpec& spec, double epsilon,
                              const AdversaryPolicy& policy,
                              const TrimPlan& plan, std::int64_t r1,
                              std::int64_t r2, RngStream stream,
                              unsigned threads) {
  auto start = Clock::now();
  auto stats = replicate_sup_stats(spec, epsilon, policy, {plan}, r1,
                                   stream.split(1), threads);
  Moments mom = analytic_moments(spec, std::max(plan.p, 2.0));
  CovarianceModel model = cholesky_with_jitter(mom.sigma);
  auto gauss =
      gaussian_sup_draws_parallel(model, r2, stream.split(2), threads);

  KolmogorovReport rep;
  rep.rho_hat = two_sample_ks(stats[0], gauss);
  rep.stderr_ = batch_ks_stderr(stats[0], gauss, 10);
  rep.dkw_band = dkw_band(r1, r2);
  rep.n = plan.n;
  rep.d = plan.d;
  rep.p = plan.p;
  rep.epsilon = epsilon;
  rep.k = plan.k;
  rep.trunc_level = plan.trunc_level;
  rep.seed = stream.key();
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

KolmogorovReport estimate_rho_tilde(const DistributionSpec& spec,
                                    double epsilon,
                                    const AdversaryPolicy& policy,
                                    const TrimPlan& plan, BootstrapKind kind,
                                    std::int64_t r_boot, std::int64_t r_gauss,
                                    RngStream stream, std::int64_t data_index,
                                    unsigned threads) {
  auto start = Clock::now();
  RngStream data_stream =
      stream.split(1).split(static_cast<std::uint64_t>(data_index));
  SampleMatrix clean = sample(spec, plan.n, data_stream.split(0));
  ContaminatedSample data =
      contaminate(clean, epsilon, policy, data_stream.split(1));

  BootstrapDraws draws = bootstrap_draws(
      data, plan, kind, r_boot,
      stream.split(2).split(static_cast<std::uint64_t>(data_index)), threads);

  Moments mom = analytic_moments(spec, std::max(plan.p, 2.0));
  CovarianceModel model = cholesky_with_jitter(mom.sigma);
  auto gauss = gaussian_sup_draws_parallel(
      model, r_gauss,
      stream.split(3).split(static_cast<std::uint64_t>(data_index)), threads);

  KolmogorovReport rep;
  rep.rho_hat = two_sample_ks(draws.draws, gauss);
  rep.stderr_ = batch_ks_stderr(draws.draws, gauss, 10);
  rep.dkw_band = dkw_band(r_boot, r_gauss);
  rep.n = plan.n;
  rep.d = plan.d;
  rep.p = plan.p;
  rep.epsilon = epsilon;
  rep.k = plan.k;
  rep.trunc_level = plan.trunc_level;
  rep.seed = data_stream.key();
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

CoverageReport coverage_experiment(const DistributionSpec& spec, double epsilon,
                                   const AdversaryPolicy& policy,
                                   const TrimPlan& plan, BootstrapKind kind,
                                   double level, std::int64_t r_outer,
                                   std::int64_t r_boot, RngStream stream,
                                   unsigned threads) {
  auto start = Clock::now();
  if (!(level > 0.0 && level < 1.0)) throw Error("coverage level must lie in (0,1)");
  const Eigen::VectorXd true_means = Eigen::VectorXd::Zero(spec.d);
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(r_outer));

  parallel_for(static_cast<std::size_t>(r_outer), threads, [&](std::size_t r) {
    RngStream s = stream.split(r);
    SampleMatrix clean = sample(spec, plan.n, s.split(0));
    ContaminatedSample data = contaminate(clean, epsilon, policy, s.split(1));
    BootstrapDraws draws = bootstrap_draws(data, plan, kind, r_boot, s.split(2), 1);
    double q = bootstrap_quantile(draws, level);
    double observed = trimmed_sup_statistic(data, plan, true_means);
    covered[r] = observed <= q ? 1 : 0;
  });

  CoverageReport rep;
  rep.level = level;
  rep.r_outer = r_outer;
  for (auto c : covered) rep.covered += c;
  rep.coverage = static_cast<double>(rep.covered) / static_cast<double>(r_outer);
  rep.stderr_ = std::sqrt(
      std::max(rep.coverage * (1.0 - rep.coverage), 0.0) /
      static_cast<double>(r_outer));
  rep.n = plan.n;
  rep.d = plan.d;
  rep.k = plan.k;
  rep.epsilon = epsilon;
  rep.seed = stream.key();
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

std::vector<ThresholdCell> threshold_experiment(
    double p, const std::vector<double>& delta_grid,
    const std::vector<std::int64_t>& n_grid, std::int64_t r_reps,
    RngStream stream, unsigned threads) {
  std::vector<ThresholdCell> table;
  std::uint64_t cell_id = 0;
  for (std::int64_t n : n_grid) {
    for (double delta : delta_grid) {
      ThresholdCell cell;
      cell.n = n;
      cell.delta = delta;
      double expo = 0.5 * p - 1.0 + delta;
      double d_raw = std::round(std::pow(static_cast<double>(n), expo));
      double d_clamped = std::clamp(d_raw, 2.0, 1e4);
      cell.d = static_cast<std::int64_t>(d_clamped);
      cell.d_clamped = d_clamped != d_raw;

      DistributionSpec spec =
          DistributionSpec::make(Family::SymmetricPareto, p + 0.01, cell.d);
      Moments mom = analytic_moments(spec, p);

      TrimPlan trimmed = plan_gaussian(n, cell.d, 0.0, p, mom.nu_p);
      TrimPlan empirical = trimmed;
      empirical.k = 0;
      empirical.phi = 0.0;

      RngStream cell_stream = stream.split(cell_id++);
      auto stats =
          replicate_sup_stats(spec, 0.0, AdversaryPolicy{}, {trimmed, empirical},
                              r_reps, cell_stream.split(1), threads);
      CovarianceModel model = cholesky_with_jitter(mom.sigma);
      auto gauss = gaussian_sup_draws_parallel(model, r_reps,
                                               cell_stream.split(2), threads);

      auto fill = [&](KolmogorovReport& rep, const std::vector<double>& arm,
                      const TrimPlan& plan) {
        rep.rho_hat = two_sample_ks(arm, gauss);
        rep.stderr_ = batch_ks_stderr(arm, gauss, 10);
        rep.dkw_band = dkw_band(r_reps, r_reps);
        rep.n = n;
        rep.d = cell.d;
        rep.p = p;
        rep.epsilon = 0.0;
        rep.k = plan.k;
        rep.trunc_level = plan.trunc_level;
        rep.seed = cell_stream.key();
      };
      fill(cell.trimmed, stats[0], trimmed);
      fill(cell.empirical, stats[1], empirical);
      table.push_back(std::move(cell));
    }
  }
  return table;
}

std::vector<VecMeanCell> vecmean_experiment(
    const DistributionSpec& spec, const NormSpecFinite& s, double epsilon,
    const AdversaryPolicy& policy, const std::vector<std::int64_t>& n_grid,
    double p, double c_knob, std::int64_t r_reps, RngStream stream,
    unsigned threads) {
  s.validate();
  if (n_grid.empty()) throw Error("vecmean_experiment: empty n grid");
  const std::int64_t n_max = *std::max_element(n_grid.begin(), n_grid.end());
  const std::size_t cells = n_grid.size();

  std::vector<VecMeanPlan> plans;
  for (std::int64_t n : n_grid) {
    plans.push_back(vecmean_plan(n, spec.d, epsilon, p, c_knob));
  }

  // Detect the cross-polytope structure once: +e_j immediately followed by
  // -e_j for every coordinate, in order.
  bool cross_polytope = s.directions.size() == 2 * static_cast<std::size_t>(spec.d);
  if (cross_polytope) {
    for (std::int64_t j = 0; j < spec.d && cross_polytope; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(spec.d);
      e[j] = 1.0;
      cross_polytope =
          (s.directions[static_cast<std::size_t>(2 * j)] - e).norm() == 0.0 &&
          (s.directions[static_cast<std::size_t>(2 * j + 1)] + e).norm() == 0.0;
    }
  }

  std::vector<std::vector<double>> errors(cells);
  for (auto& v : errors) v.resize(static_cast<std::size_t>(r_reps));
  std::vector<std::int64_t> mismatches(cells, 0);
  std::vector<std::int64_t> lemma_violations(cells, 0);
  std::vector<std::int64_t> mismatch_slots(cells * static_cast<std::size_t>(r_reps), 0);
  std::vector<std::int64_t> lemma_slots(cells * static_cast<std::size_t>(r_reps), 0);

  const Eigen::VectorXd mu_true = Eigen::VectorXd::Zero(spec.d);

  parallel_for(static_cast<std::size_t>(r_reps), threads, [&](std::size_t r) {
    RngStream rep_stream = stream.split(1).split(r);
    SampleMatrix full = sample(spec, n_max, rep_stream.split(0));
    for (std::size_t c = 0; c < cells; ++c) {
      const std::int64_t n = n_grid[c];
      SampleMatrix prefix;
      prefix.seed = full.seed;
      prefix.values = full.values.topRows(n);
      ContaminatedSample data =
          contaminate(prefix, epsilon, policy, rep_stream.split(1 + c));
      auto tvals = directional_trimmed_means(data, s, plans[c].k);
      MinimaxSolution sol = minimax_mean(tvals, s);
      errors[c][r] = s.norm(sol.mu_hat - mu_true);
      if (cross_polytope) {
        for (std::int64_t j = 0; j < spec.d; ++j) {
          if (sol.mu_hat[j] != tvals[static_cast<std::size_t>(2 * j)]) {
            mismatch_slots[c * static_cast<std::size_t>(r_reps) + r] = 1;
            break;
          }
        }
      }
      if (!check_lemma_5_2(sol.mu_hat, tvals, mu_true, s)) {
        lemma_slots[c * static_cast<std::size_t>(r_reps) + r] = 1;
      }
    }
  });

  Moments mom = analytic_moments(spec, p);
  MonteCarloValue width =
      gaussian_width(mom.sigma, s, 20000, stream.split(2));

  std::vector<VecMeanCell> out(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t r = 0; r < static_cast<std::size_t>(r_reps); ++r) {
      mismatches[c] += mismatch_slots[c * static_cast<std::size_t>(r_reps) + r];
      lemma_violations[c] += lemma_slots[c * static_cast<std::size_t>(r_reps) + r];
    }
    std::vector<double> sorted = errors[c];
    std::sort(sorted.begin(), sorted.end());
    out[c].n = n_grid[c];
    out[c].k = plans[c].k;
    out[c].median_error = quantile_type1_sorted(sorted, 0.5);
    out[c].q25 = quantile_type1_sorted(sorted, 0.25);
    out[c].q75 = quantile_type1_sorted(sorted, 0.75);
    out[c].width_over_sqrt_n =
        width.value / std::sqrt(static_cast<double>(n_grid[c]));
    out[c].exact_mismatches = mismatches[c];
    out[c].lemma52_violations = lemma_violations[c];
  }
  return out;
}

}  // namespace trimclt
