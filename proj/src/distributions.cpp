#include "trimclt/distributions.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"

namespace trimclt {

namespace {

constexpr double kQuadTol = 1e-11;

double lgamma_d(double x) { return std::lgamma(x); }

// E|Z|^p for Z standard normal.
double gaussian_abs_moment(double p) {
  return std::exp(0.5 * p * std::log(2.0) + lgamma_d(0.5 * (p + 1.0)) -
                  0.5 * std::log(3.14159265358979323846));
}

// E|T|^p for T Student-t with dof nu, p < nu.
double student_abs_moment(double nu, double p) {
  return std::exp(0.5 * p * std::log(nu) + lgamma_d(0.5 * (p + 1.0)) +
                  lgamma_d(0.5 * (nu - p)) - 0.5 * std::log(3.14159265358979323846) -
                  lgamma_d(0.5 * nu));
}

// E|e^{sZ} - e^{s^2/2}|^p by adaptive quadrature over the two smooth pieces.
double lognormal_abs_moment(double s, double p) {
  const double c = std::exp(0.5 * s * s);
  const double zstar = 0.5 * s;  // where e^{sz} = c
  boost::math::quadrature::exp_sinh<double> integrator;
  auto left = [&](double t) {
    double z = zstar - t;
    return std::pow(c - std::exp(s * z), p) * normal_pdf(z);
  };
  auto right = [&](double t) {
    double z = zstar + t;
    return std::pow(std::exp(s * z) - c, p) * normal_pdf(z);
  };
  return integrator.integrate(left, kQuadTol) +
         integrator.integrate(right, kQuadTol);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::GaussianEquicorrelated: return "gaussian";
    case Family::StudentT: return "student_t";
    case Family::SymmetricPareto: return "pareto";
    case Family::LogNormalCentered: return "lognormal";
  }
  return "?";
}

DistributionSpec DistributionSpec::make(Family family, double param,
                                        std::int64_t d, double scale) {
  DistributionSpec spec;
  spec.family = family;
  spec.param = param;
  spec.d = d;
  spec.scale = Eigen::VectorXd::Constant(1, scale);
  spec.validate();
  return spec;
}

DistributionSpec DistributionSpec::make(Family family, double param,
                                        std::int64_t d,
                                        Eigen::VectorXd scales) {
  DistributionSpec spec;
  spec.family = family;
  spec.param = param;
  spec.d = d;
  spec.scale = std::move(scales);
  spec.validate();
  return spec;
}

void DistributionSpec::validate() const {
  if (d < 1) throw ConfigError("distribution.d must be >= 1");
  if (scale.size() != 1 && scale.size() != d) {
    throw ConfigError("distribution.scale must have 1 or d entries");
  }
  for (std::int64_t j = 0; j < scale.size(); ++j) {
    if (!(scale[j] > 0.0)) throw ConfigError("distribution.scale must be > 0");
  }
  switch (family) {
    case Family::GaussianEquicorrelated:
      if (!(param >= 0.0 && param < 1.0)) {
        throw ConfigError("gaussian equicorrelation must lie in [0,1)");
      }
      break;
    case Family::StudentT:
      if (!(param > 2.0)) throw ConfigError("student_t dof must be > 2");
      break;
    case Family::SymmetricPareto:
      if (!(param > 2.0)) throw ConfigError("pareto tail index must be > 2");
      break;
    case Family::LogNormalCentered:
      if (!(param > 0.0)) throw ConfigError("lognormal s must be > 0");
      break;
  }
}

double DistributionSpec::scale_at(std::int64_t j) const {
  return scale.size() == 1 ? scale[0] : scale[j];
}

double DistributionSpec::moment_sup() const {
  switch (family) {
    case Family::StudentT:
    case Family::SymmetricPareto:
      return param;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

SampleMatrix sample(const DistributionSpec& spec, std::int64_t n,
                    RngStream stream) {
  spec.validate();
  if (n < 1) throw Error("sample: n must be >= 1");
  SampleMatrix out;
  out.seed = stream.key();
  out.values.resize(n, spec.d);
  const std::int64_t d = spec.d;

  switch (spec.family) {
    case Family::GaussianEquicorrelated: {
      const double rho = spec.param;
      const double a = std::sqrt(rho);
      const double b = std::sqrt(1.0 - rho);
      for (std::int64_t i = 0; i < n; ++i) {
        double shared = (rho > 0.0) ? stream.next_gaussian() : 0.0;
        for (std::int64_t j = 0; j < d; ++j) {
          double z = stream.next_gaussian();
          out.values(i, j) = spec.scale_at(j) * (a * shared + b * z);
        }
      }
      break;
    }
    case Family::StudentT: {
      const double nu = spec.param;
      for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < d; ++j) {
          double z = stream.next_gaussian();
          double v = stream.next_chi_square(nu);
          out.values(i, j) = spec.scale_at(j) * z * std::sqrt(nu / v);
        }
      }
      break;
    }
    case Family::SymmetricPareto: {
      const double beta = spec.param;
      const double inv = -1.0 / beta;
      for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < d; ++j) {
          double r = std::pow(stream.next_double_pos(), inv);
          double s = stream.next_bool() ? 1.0 : -1.0;
          out.values(i, j) = spec.scale_at(j) * s * r;
        }
      }
      break;
    }
    case Family::LogNormalCentered: {
      const double s = spec.param;
      const double c = std::exp(0.5 * s * s);
      for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < d; ++j) {
          double z = stream.next_gaussian();
          out.values(i, j) = spec.scale_at(j) * (std::exp(s * z) - c);
        }
      }
      break;
    }
  }
  return out;
}

double standard_abs_moment(const DistributionSpec& spec, double p) {
  if (!(p >= 2.0)) throw MomentDoesNotExist("moment order must be >= 2");
  switch (spec.family) {
    case Family::GaussianEquicorrelated:
      return gaussian_abs_moment(p);
    case Family::StudentT:
      if (p >= spec.param) {
        throw MomentDoesNotExist("student_t moment order " + std::to_string(p) +
                                 " >= dof " + std::to_string(spec.param));
      }
      return student_abs_moment(spec.param, p);
    case Family::SymmetricPareto:
      if (p >= spec.param) {
        throw MomentDoesNotExist("pareto moment order " + std::to_string(p) +
                                 " >= tail index " + std::to_string(spec.param));
      }
      return spec.param / (spec.param - p);
    case Family::LogNormalCentered:
      return lognormal_abs_moment(spec.param, p);
  }
  throw Error("unreachable");
}

double standard_variance(const DistributionSpec& spec) {
  switch (spec.family) {
    case Family::GaussianEquicorrelated:
      return 1.0;
    case Family::StudentT:
      return spec.param / (spec.param - 2.0);
    case Family::SymmetricPareto:
      return spec.param / (spec.param - 2.0);
    case Family::LogNormalCentered: {
      double s2 = spec.param * spec.param;
      return (std::exp(s2) - 1.0) * std::exp(s2);
    }
  }
  throw Error("unreachable");
}

Moments analytic_moments(const DistributionSpec& spec, double p) {
  spec.validate();
  Moments m;
  m.mean = Eigen::VectorXd::Zero(spec.d);
  const double var_std = standard_variance(spec);

  m.sigma = Eigen::MatrixXd::Zero(spec.d, spec.d);
  for (std::int64_t j = 0; j < spec.d; ++j) {
    double sj = spec.scale_at(j);
    m.sigma(j, j) = sj * sj * var_std;
  }
  if (spec.family == Family::GaussianEquicorrelated && spec.param > 0.0) {
    for (std::int64_t i = 0; i < spec.d; ++i) {
      for (std::int64_t j = 0; j < spec.d; ++j) {
        if (i != j) {
          m.sigma(i, j) = spec.param * spec.scale_at(i) * spec.scale_at(j);
        }
      }
    }
  }

  double smin = spec.scale_at(0), smax = spec.scale_at(0);
  for (std::int64_t j = 1; j < spec.d; ++j) {
    smin = std::min(smin, spec.scale_at(j));
    smax = std::max(smax, spec.scale_at(j));
  }
  m.sigma_lower = smin * std::sqrt(var_std);

  if (p == 2.0) {
    m.nu_p = smax * std::sqrt(var_std);
  } else {
    m.nu_p = smax * std::pow(standard_abs_moment(spec, p), 1.0 / p);
  }
  return m;
}

void standard_truncated_moments(const DistributionSpec& spec, double m_level,
                                double* second, double* first) {
  if (!(m_level > 0.0)) throw Error("truncation level must be > 0");
  const double m = m_level;
  switch (spec.family) {
    case Family::GaussianEquicorrelated: {
      // symmetric: E tau = 0; E tau^2 = int_{|x|<=M} x^2 phi + M^2 P(|X|>M)
      double q = 1.0 - normal_cdf(m);
      double mid = 1.0 - 2.0 * (m * normal_pdf(m) + q);
      *second = mid + 2.0 * m * m * q;
      *first = 0.0;
      return;
    }
    case Family::StudentT: {
      boost::math::students_t dist(spec.param);
      double q = boost::math::cdf(boost::math::complement(dist, m));
      boost::math::quadrature::tanh_sinh<double> integrator;
      auto f = [&](double x) { return x * x * boost::math::pdf(dist, x); };
      double mid = 2.0 * integrator.integrate(f, 0.0, m, kQuadTol);
      *second = mid + 2.0 * m * m * q;
      *first = 0.0;
      return;
    }
    case Family::SymmetricPareto: {
      const double beta = spec.param;
      if (m <= 1.0) {  // support is |x| >= 1: everything clamps
        *second = m * m;
        *first = 0.0;
        return;
      }
      double mid = beta / (beta - 2.0) * (1.0 - std::pow(m, 2.0 - beta));
      *second = mid + std::pow(m, 2.0 - beta);
      *first = 0.0;
      return;
    }
    case Family::LogNormalCentered: {
      const double s = spec.param;
      const double c = std::exp(0.5 * s * s);
      const double z_hi = std::log(m + c) / s;
      const bool lower_clamp = c - m > 0.0;
      const double z_lo =
          lower_clamp ? std::log(c - m) / s : -std::numeric_limits<double>::infinity();
      boost::math::quadrature::exp_sinh<double> semi;
      boost::math::quadrature::tanh_sinh<double> finite;
      auto g = [&](double z) { return std::exp(s * z) - c; };
      double e1, e2;
      if (lower_clamp) {
        auto f1 = [&](double z) { return g(z) * normal_pdf(z); };
        auto f2 = [&](double z) { return g(z) * g(z) * normal_pdf(z); };
        double mid1 = finite.integrate(f1, z_lo, z_hi, kQuadTol);
        double mid2 = finite.integrate(f2, z_lo, z_hi, kQuadTol);
        double p_lo = normal_cdf(z_lo);
        double p_hi = 1.0 - normal_cdf(z_hi);
        e1 = -m * p_lo + mid1 + m * p_hi;
        e2 = m * m * p_lo + mid2 + m * m * p_hi;
      } else {
        auto f1 = [&](double t) {
          double z = z_hi - t;
          return g(z) * normal_pdf(z);
        };
        auto f2 = [&](double t) {
          double z = z_hi - t;
          return g(z) * g(z) * normal_pdf(z);
        };
        double p_hi = 1.0 - normal_cdf(z_hi);
        e1 = semi.integrate(f1, kQuadTol) + m * p_hi;
        e2 = semi.integrate(f2, kQuadTol) + m * m * p_hi;
      }
      *second = e2;
      *first = e1;
      return;
    }
  }
  throw Error("unreachable");
}

}  // namespace trimclt
