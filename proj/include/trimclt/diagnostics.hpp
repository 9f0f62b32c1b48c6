#ifndef TRIMCLT_DIAGNOSTICS_HPP
#define TRIMCLT_DIAGNOSTICS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "trimclt/contamination.hpp"
#include "trimclt/distributions.hpp"
#include "trimclt/estimators.hpp"
#include "trimclt/rng.hpp"

namespace trimclt {

/// Outcome of running one lemma check over some instances or draws.
struct LemmaReport {
  std::string lemma_id;
  std::int64_t instances_checked = 0;
  std::int64_t skipped = 0;  // precondition failures, counted separately
  std::int64_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double violation_frequency = 0.0;
  double frequency_allowance = 0.0;  // paper bound + 3 binomial SE
  double observed = 0.0;             // headline value (lemma-specific)
  double bound = 0.0;                // headline bound
  bool passed = true;
  std::string note;
};

/// Sums counts, keeps the worst slack, ANDs pass.
void merge_reports(LemmaReport& into, const LemmaReport& from);

/// Worst-case count of entries exceeding the clamp level:
/// max over columns of #{ i : |x_ij| > M }.
std::int64_t count_exceedances(const Eigen::MatrixXd& sample, double m_level);

/// Deterministic bounding inequality: with V_M(clean) <= t and
/// floor(eps n) + t <= phi n < n/2, every column satisfies
///   | trimmed_mean(contaminated col, phi n) - mean(clamped clean col) |
///   <= 6 phi M.
/// One instance per call; violating columns are counted.
LemmaReport check_bounding_lemma(const ContaminatedSample& data,
                                 const TrimPlan& plan);

/// Multiplier-weight version: over R weight draws, the frequency of
///   sup_f | T~(f) - G~(tau_M o f) | > 28 phi M sqrt(2n ln 2n)
///                                     + 6 phi M sqrt(2 ln n)
/// must stay below 2/n + 3 SE.
LemmaReport check_gaussian_bounding_lemma(const ContaminatedSample& data,
                                          const TrimPlan& plan,
                                          RngStream stream,
                                          std::int64_t r_draws);

/// Counting bound: freq{ V_M >= 3 ln(1+d) + 7 n nu_p^p / M^p } over R fresh
/// samples must stay below 2 exp(-n nu_p^p / M^p) + 3 SE.
LemmaReport check_counting_lemma(const DistributionSpec& spec, std::int64_t n,
                                 double p, double m_level, std::int64_t r_draws,
                                 RngStream stream);

/// Boolean counting bound for i.i.d. Bernoulli rows with column means
/// `probs`: freq{ max_j count_j >= 3 ln(1+d) + 7 n rho } <= 2 exp(-n rho) + 3 SE,
/// rho = max_j probs_j.
LemmaReport check_boolean_counting(const Eigen::VectorXd& probs, std::int64_t n,
                                   std::int64_t r_draws, RngStream stream);

/// Conditional counting via resampled exceedance indicators: given a sample
/// with V_M <= t, the resampled count V~_M satisfies
/// freq{ V~_M >= 3 ln(1+d) + 7 t } <= 2 exp(-t) + 3 SE.
LemmaReport check_conditional_counting(const DistributionSpec& spec,
                                       std::int64_t n, double m_level,
                                       std::int64_t t_budget,
                                       std::int64_t r_draws, RngStream stream);

/// Covariance discrepancy under truncation (diagonal-covariance families):
/// Delta_pi(Sigma, Sigma_tau) <= 4 nu_p^p M^(2-p); Delta_pi by quadrature.
LemmaReport check_covariance_bound(const DistributionSpec& spec, double p,
                                   double m_level);

/// Gaussian comparison trend: halving Delta_pi (by interpolating sigma2
/// toward sigma1) must not increase the measured Kolmogorov distance beyond
/// Monte Carlo noise. Reports (ln d) sqrt(Delta_pi) alongside.
LemmaReport check_gaussian_comparison(const Eigen::MatrixXd& sigma1,
                                      const Eigen::MatrixXd& sigma2,
                                      std::int64_t r_draws, RngStream stream);

}  // namespace trimclt

#endif
