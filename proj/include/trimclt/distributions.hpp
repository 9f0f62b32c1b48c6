#ifndef TRIMCLT_DISTRIBUTIONS_HPP
#define TRIMCLT_DISTRIBUTIONS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "trimclt/rng.hpp"

namespace trimclt {

enum class Family {
  GaussianEquicorrelated,  // param = equicorrelation rho in [0,1)
  StudentT,                // param = degrees of freedom, > 2
  SymmetricPareto,         // param = tail index, > 2
  LogNormalCentered,       // param = log-scale s, > 0
};

std::string family_name(Family f);

/// Synthetic source for the coordinate-projection function family. Every
/// moment functional used by the experiments is available in closed form or
/// by quadrature, so the generator doubles as its own ground truth.
struct DistributionSpec {
  Family family = Family::GaussianEquicorrelated;
  double param = 0.0;
  std::int64_t d = 1;
  Eigen::VectorXd scale;  // per-coordinate scale; broadcast if size 1

  static DistributionSpec make(Family family, double param, std::int64_t d,
                               double scale = 1.0);
  static DistributionSpec make(Family family, double param, std::int64_t d,
                               Eigen::VectorXd scales);

  void validate() const;
  double scale_at(std::int64_t j) const;

  /// Largest moment order with a finite centered absolute moment
  /// (infinity for Gaussian / lognormal).
  double moment_sup() const;
};

/// One i.i.d. sample evaluated on all coordinate projections: row i holds
/// f_1(X_i), ..., f_d(X_i).
struct SampleMatrix {
  Eigen::MatrixXd values;  // n x d
  std::uint64_t seed = 0;

  std::int64_t n() const { return values.rows(); }
  std::int64_t d() const { return values.cols(); }
};

struct Moments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd sigma;
  double nu_p = 0.0;         // sup_f (P|f - Pf|^p)^(1/p)
  double sigma_lower = 0.0;  // inf_f sd(f)
};

/// Draws n rows; deterministic given (spec, n, stream).
SampleMatrix sample(const DistributionSpec& spec, std::int64_t n,
                    RngStream stream);

/// Closed forms where available, adaptive quadrature (rel. tol 1e-10)
/// otherwise. Throws MomentDoesNotExist if order p is out of range.
/// p = 2 is allowed and returns nu_2 = max per-coordinate sd.
Moments analytic_moments(const DistributionSpec& spec, double p);

/// Centered absolute moment E|X - EX|^p of the standard (scale 1) marginal.
double standard_abs_moment(const DistributionSpec& spec, double p);

/// Variance of the standard marginal.
double standard_variance(const DistributionSpec& spec);

/// E tau_M(X)^2 and E tau_M(X) of the standard marginal, where tau_M clamps
/// to [-M, M]. Used by the covariance-bound diagnostic.
void standard_truncated_moments(const DistributionSpec& spec, double m_level,
                                double* second, double* first);

}  // namespace trimclt

#endif
