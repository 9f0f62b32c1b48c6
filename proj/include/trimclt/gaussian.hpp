#ifndef TRIMCLT_GAUSSIAN_HPP
#define TRIMCLT_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "trimclt/rng.hpp"

namespace trimclt {

/// Cholesky-style factorization of a covariance, with the diagonal jitter
/// that was needed to make the factorization succeed.
struct CovarianceModel {
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd factor;  // lower triangular, factor * factor^T = sigma + jitter I
  double jitter = 0.0;

  std::int64_t dim() const { return sigma.rows(); }
  double sigma_lower() const;  // min sqrt of diagonal
};

/// Finite symmetric dual set describing a norm: ||x|| = max_{v in S} <x,v>.
struct NormSpecFinite {
  std::vector<Eigen::VectorXd> directions;

  void validate() const;  // symmetric (v in S => -v in S), no zero vector
  std::int64_t dim() const;
  double norm(const Eigen::VectorXd& x) const;

  /// The 2d-point cross-polytope set {+-e_j}.
  static NormSpecFinite linf(std::int64_t d);
};

/// Strict Cholesky; on failure retries with jitter 1e-12 * maxdiag,
/// escalating tenfold up to 1e-6 * maxdiag. Throws NotPsd when exhausted.
CovarianceModel cholesky_with_jitter(const Eigen::MatrixXd& sigma);

/// R i.i.d. draws of max_j (factor W)_j, W standard normal.
std::vector<double> gaussian_sup_draws(const CovarianceModel& model,
                                       std::int64_t r_draws, RngStream stream);

/// Like gaussian_sup_draws but returns the full pre-max vectors (row per draw).
Eigen::MatrixXd gaussian_vector_draws(const CovarianceModel& model,
                                      std::int64_t r_draws, RngStream stream);

struct MonteCarloValue {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo Gaussian width of gamma^(1/2) S: E sup_{v in S} <v, L W>.
MonteCarloValue gaussian_width(const Eigen::MatrixXd& gamma,
                               const NormSpecFinite& s, std::int64_t r_draws,
                               RngStream stream);

/// E sup over coordinate pairs (j,l) with d_P(j,l) < delta of G_j - G_l;
/// the empty pair set yields exactly 0.
MonteCarloValue xi_estimate(const CovarianceModel& model, double delta,
                            std::int64_t r_draws, RngStream stream);

struct NazarovReport {
  std::vector<double> lambda_grid;
  std::vector<double> band_probability;  // empirical Pr(lambda <= Z <= lambda+delta)
  double bound = 0.0;                    // (delta/sigma_lower)(2 + sqrt(2 ln d))
  double worst_excess = 0.0;             // max over grid of probability - bound
  double max_stderr = 0.0;
  bool pass = false;                     // worst_excess <= 3 * max_stderr
};

/// Empirical check of the Gaussian anti-concentration bound over a grid.
NazarovReport nazarov_diagnostic(const CovarianceModel& model, double delta,
                                 const std::vector<double>& lambda_grid,
                                 std::int64_t r_draws, RngStream stream);

}  // namespace trimclt

#endif
