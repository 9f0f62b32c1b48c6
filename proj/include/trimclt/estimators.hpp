#ifndef TRIMCLT_ESTIMATORS_HPP
#define TRIMCLT_ESTIMATORS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>

namespace trimclt {

/// Tuning tuple for the trimmed estimators: trim count k, truncation level
/// M, exceedance budget t and trim fraction phi, with the moment order p and
/// moment bound nu_p they were derived from.
struct TrimPlan {
  double epsilon = 0.0;
  double p = 0.0;
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t k = 0;        // values discarded per side and per function
  double trunc_level = 0.0;  // clamp level M backing the analysis
  std::int64_t tail_budget = 0;  // allowed count of values beyond M
  double phi = 0.0;              // trim fraction, k = phi * n
  double nu_p = 0.0;

  double trim_fraction() const { return phi; }
};

/// Average after discarding the k smallest and k largest values. Stable
/// tie-breaking by original index; kept values are summed pairwise in
/// original order, so k = 0 reproduces mean() bit for bit.
double trimmed_mean(std::span<const double> col, std::int64_t k);

/// Column-wise trimmed mean with an independent permutation per column.
Eigen::VectorXd trimmed_mean_matrix(const Eigen::MatrixXd& sample,
                                    std::int64_t k);

/// Mean of the values clamped to [-M, M].
double truncated_mean(std::span<const double> col, double trunc_level);

/// Exceedance budget ceil(3 ln(1+d) + 7 n^((p-2)/(4p-2)) ln(nd)) used by the
/// Gaussian-approximation trim count.
std::int64_t gaussian_tail_budget(std::int64_t n, std::int64_t d, double p);

/// Truncation level n^(3/(4p-2)) * nu_p * ln^(-1/p)(nd).
double truncation_level(std::int64_t n, std::int64_t d, double p, double nu_p);

/// Bootstrap exceedance budget ceil(24 ln(1+d) + 49 n nu_p^p / M^p).
std::int64_t bootstrap_tail_budget(std::int64_t n, std::int64_t d, double p,
                                   double nu_p, double trunc_level);

/// Trim plan for the Gaussian approximation: k = floor(eps n) + tail budget.
/// Throws InfeasibleTrim if k >= n/2.
TrimPlan plan_gaussian(std::int64_t n, std::int64_t d, double epsilon,
                       double p, double nu_p);

/// Trim plan for the bootstrap approximation:
/// phi n = floor(eps n + max(eps n, t)) + t with the bootstrap budget t.
/// Throws InfeasibleTrim if phi >= 1/2.
TrimPlan plan_bootstrap(std::int64_t n, std::int64_t d, double epsilon,
                        double p, double nu_p);

/// Moment-vs-variance condition shared by the Gaussian and bootstrap
/// theorems: nu_p^2 n^(-(3p-6)/(4p-2)) ln(nd)^(1-2/p) <= (3/8) sigma_lower.
bool check_feasibility(const TrimPlan& plan, double sigma_lower);

/// Plan for the deterministic lemma scenarios: the Gaussian plan when it
/// fits, otherwise the truncation level is raised until the tail budget
/// keeps phi <= 0.45. The bounding lemma holds for any such pair.
TrimPlan lemma_plan(std::int64_t n, std::int64_t d, double epsilon, double p,
                    double nu_p);

}  // namespace trimclt

#endif
