#ifndef TRIMCLT_VECMEAN_HPP
#define TRIMCLT_VECMEAN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "trimclt/contamination.hpp"
#include "trimclt/gaussian.hpp"

namespace trimclt {

/// Tuning for the norm-mean estimator: complexity factor K_n and trim count.
struct VecMeanPlan {
  double k_n = 0.0;     // (2d+4) (ln n v ln 8e)
  std::int64_t k = 0;   // floor(eps n) + ceil(C n^((p-2)/(4p-2)) K_n)
  double c_knob = 1.0;  // the unspecified absolute constant, configurable
};

enum class SolverStatus { Optimal, IterLimit };

struct MinimaxSolution {
  Eigen::VectorXd mu_hat;
  double objective = 0.0;  // max_v | T_v - <v, mu_hat> |, recomputed
  SolverStatus status = SolverStatus::Optimal;
  double duality_gap = 0.0;  // optimality residual of the solver
  bool flagged_nonunique = false;
};

/// Trimmed mean of the projections <x_i, v> for each direction v in S,
/// aligned with s.directions.
std::vector<double> directional_trimmed_means(const ContaminatedSample& data,
                                              const NormSpecFinite& s,
                                              std::int64_t k);

/// Solves min_mu max_{v in S} | T_v - <v, mu> | as a linear program
/// (dense two-phase simplex, Bland's rule; projected subgradient fallback
/// reporting IterLimit). Throws DegenerateNormSpec if S is empty.
MinimaxSolution minimax_mean(const std::vector<double>& tvals,
                             const NormSpecFinite& s);

/// K_n and trim count of the norm-mean theorem; InfeasibleTrim if k >= n/2.
VecMeanPlan vecmean_plan(std::int64_t n, std::int64_t d, double epsilon,
                         double p, double c_knob = 1.0);

/// || mu_hat - mu_true ||_S <= 2 max_v | T_v - <v, mu_true> | + tolerance.
bool check_lemma_5_2(const Eigen::VectorXd& mu_hat,
                     const std::vector<double>& tvals,
                     const Eigen::VectorXd& mu_true, const NormSpecFinite& s,
                     double tolerance = 1e-8);

}  // namespace trimclt

#endif
