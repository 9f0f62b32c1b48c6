#ifndef TRIMCLT_EXPERIMENTS_HPP
#define TRIMCLT_EXPERIMENTS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trimclt/bootstrap.hpp"
#include "trimclt/contamination.hpp"
#include "trimclt/distributions.hpp"
#include "trimclt/estimators.hpp"
#include "trimclt/gaussian.hpp"
#include "trimclt/vecmean.hpp"

namespace trimclt {

enum class SupStatLabel { TrimmedZ, EmpiricalZ, GaussianZ, BootstrapZ };

/// Replication vector of sup-statistics feeding Kolmogorov estimation.
struct SupStatSample {
  std::vector<double> values;
  SupStatLabel label = SupStatLabel::TrimmedZ;
  std::int64_t n = 0, d = 0;
  double p = 0.0, epsilon = 0.0;
  std::int64_t k = 0;
  double trunc_level = 0.0;
  std::uint64_t seed = 0;
};

/// Kolmogorov-distance estimate with its Monte Carlo error bars.
struct KolmogorovReport {
  double rho_hat = 0.0;
  double stderr_ = 0.0;   // 10-batch split estimate
  double dkw_band = 0.0;  // sqrt(ln(2/0.05) / (2 min(R1,R2)))
  std::int64_t n = 0, d = 0;
  double p = 0.0, epsilon = 0.0;
  std::int64_t k = 0;
  double trunc_level = 0.0;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;  // informational; excluded from reproducibility
};

/// Exact two-sample Kolmogorov-Smirnov distance (merge of sorted samples).
double two_sample_ks(std::span<const double> a, std::span<const double> b);

/// max over columns of sqrt(n) (trimmed column mean - true mean).
double trimmed_sup_statistic(const ContaminatedSample& data,
                             const TrimPlan& plan,
                             const Eigen::VectorXd& true_means);

/// DKW 95% band for the smaller of the two replication counts.
double dkw_band(std::int64_t r1, std::int64_t r2);

/// R sup-draws of the reference Gaussian, one substream per draw so the
/// result is identical for every thread count.
std::vector<double> gaussian_sup_draws_parallel(const CovarianceModel& model,
                                                std::int64_t r_draws,
                                                RngStream stream,
                                                unsigned threads);

/// R1 replications of the trimmed sup-statistic, one inner vector per plan,
/// all plans evaluated on shared samples. A plan with k = 0 is the
/// empirical-mean arm.
std::vector<std::vector<double>> replicate_sup_stats(
    const DistributionSpec& spec, double epsilon, const AdversaryPolicy& policy,
    const std::vector<TrimPlan>& plans, std::int64_t r1, RngStream stream,
    unsigned threads);

/// Kolmogorov distance between the trimmed sup-statistic (R1 fresh
/// contaminated samples) and the analytic Gaussian reference (R2 draws).
KolmogorovReport estimate_rho(const DistributionSpec& spec, double epsilon,
                              const AdversaryPolicy& policy,
                              const TrimPlan& plan, std::int64_t r1,
                              std::int64_t r2, RngStream stream,
                              unsigned threads);

/// Conditional bootstrap distance for ONE data sample (index `data_index`
/// under the given stream): R_boot draws given the sample vs R_gauss
/// reference draws. Sweeping over data samples is the caller's loop.
KolmogorovReport estimate_rho_tilde(const DistributionSpec& spec,
                                    double epsilon,
                                    const AdversaryPolicy& policy,
                                    const TrimPlan& plan, BootstrapKind kind,
                                    std::int64_t r_boot, std::int64_t r_gauss,
                                    RngStream stream, std::int64_t data_index,
                                    unsigned threads);

struct CoverageReport {
  double coverage = 0.0;
  double stderr_ = 0.0;
  double level = 0.0;
  std::int64_t covered = 0;
  std::int64_t r_outer = 0;
  std::int64_t n = 0, d = 0;
  std::int64_t k = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
};

/// Simultaneous one-sided band check: over R_outer datasets, how often
/// sup_f sqrt(n)(T^ - Pf) stays below the bootstrap level-quantile.
CoverageReport coverage_experiment(const DistributionSpec& spec, double epsilon,
                                   const AdversaryPolicy& policy,
                                   const TrimPlan& plan, BootstrapKind kind,
                                   double level, std::int64_t r_outer,
                                   std::int64_t r_boot, RngStream stream,
                                   unsigned threads);

struct ThresholdCell {
  std::int64_t n = 0;
  double delta = 0.0;
  std::int64_t d = 0;          // round(n^(p/2-1+delta)), clamped to [2, 1e4]
  bool d_clamped = false;
  KolmogorovReport trimmed;
  KolmogorovReport empirical;
};

/// Phase table for the empirical-mean threshold: dimension grows like
/// n^(p/2-1+delta) on the heavy-tailed surrogate, trimmed and k=0 arms on
/// shared samples.
std::vector<ThresholdCell> threshold_experiment(
    double p, const std::vector<double>& delta_grid,
    const std::vector<std::int64_t>& n_grid, std::int64_t r_reps,
    RngStream stream, unsigned threads);

struct VecMeanCell {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double median_error = 0.0;
  double q25 = 0.0, q75 = 0.0;
  double width_over_sqrt_n = 0.0;  // w(Gamma^(1/2) S) / sqrt(n) reference
  std::int64_t exact_mismatches = 0;  // minimax vs coordinate trimmed means
  std::int64_t lemma52_violations = 0;
};

/// Error-vs-n report for the norm-mean estimator; replication r draws one
/// sample of max(n_grid) rows and evaluates every n on its prefix, so the
/// per-doubling ratios are positively coupled.
std::vector<VecMeanCell> vecmean_experiment(
    const DistributionSpec& spec, const NormSpecFinite& s, double epsilon,
    const AdversaryPolicy& policy, const std::vector<std::int64_t>& n_grid,
    double p, double c_knob, std::int64_t r_reps, RngStream stream,
    unsigned threads);

}  // namespace trimclt

#endif
