#include "trimclt/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"

namespace trimclt {

double CovarianceModel::sigma_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < sigma.rows(); ++j) {
    lo = std::min(lo, sigma(j, j));
  }
  return std::sqrt(std::max(lo, 0.0));
}

void NormSpecFinite::validate() const {
  if (directions.empty()) throw DegenerateNormSpec("dual set S is empty");
  const std::int64_t d = directions.front().size();
  for (const auto& v : directions) {
    if (v.size() != d) throw DegenerateNormSpec("dual set has mixed dimensions");
    if (v.norm() == 0.0) throw DegenerateNormSpec("dual set contains the zero vector");
  }
  for (const auto& v : directions) {
    bool found = false;
    for (const auto& w : directions) {
      if ((v + w).lpNorm<Eigen::Infinity>() == 0.0) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw DegenerateNormSpec("dual set is not symmetric: missing -v");
    }
  }
}

std::int64_t NormSpecFinite::dim() const {
  return directions.empty() ? 0 : directions.front().size();
}

double NormSpecFinite::norm(const Eigen::VectorXd& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : directions) best = std::max(best, v.dot(x));
  return best;
}

NormSpecFinite NormSpecFinite::linf(std::int64_t d) {
  NormSpecFinite s;
  for (std::int64_t j = 0; j < d; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[j] = 1.0;
    s.directions.push_back(e);
    s.directions.push_back(-e);
  }
  return s;
}

CovarianceModel cholesky_with_jitter(const Eigen::MatrixXd& sigma) {
  const std::int64_t d = sigma.rows();
  if (sigma.cols() != d) throw Error("covariance must be square");
  double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff())) {
    throw Error("covariance is not symmetric");
  }
  double maxdiag = 0.0;
  for (std::int64_t j = 0; j < d; ++j) {
    if (sigma(j, j) < 0.0) throw NotPsd("negative diagonal entry");
    maxdiag = std::max(maxdiag, sigma(j, j));
  }

  CovarianceModel model;
  model.sigma = 0.5 * (sigma + sigma.transpose());

  if (maxdiag == 0.0) {
    // Zero diagonal plus symmetry forces the zero matrix.
    if (model.sigma.cwiseAbs().maxCoeff() != 0.0) {
      throw NotPsd("zero diagonal with nonzero off-diagonal entries");
    }
    model.factor = Eigen::MatrixXd::Zero(d, d);
    model.jitter = 0.0;
    return model;
  }

  double jitter = 0.0;
  for (int attempt = 0; attempt <= 7; ++attempt) {
    Eigen::MatrixXd shifted = model.sigma;
    if (jitter > 0.0) shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      model.factor = llt.matrixL();
      model.jitter = jitter;
      return model;
    }
    jitter = (jitter == 0.0) ? 1e-12 * maxdiag : 10.0 * jitter;
    if (jitter > 1e-6 * maxdiag * 1.000001) break;
  }
  throw NotPsd("cholesky failed up to jitter 1e-6 * maxdiag");
}

std::vector<double> gaussian_sup_draws(const CovarianceModel& model,
                                       std::int64_t r_draws, RngStream stream) {
  if (r_draws < 1) throw Error("gaussian_sup_draws: R must be >= 1");
  const std::int64_t d = model.dim();
  std::vector<double> out(static_cast<std::size_t>(r_draws));
  Eigen::VectorXd w(d), g(d);
  for (std::int64_t r = 0; r < r_draws; ++r) {
    for (std::int64_t j = 0; j < d; ++j) w[j] = stream.next_gaussian();
    g.noalias() = model.factor * w;
    out[static_cast<std::size_t>(r)] = g.maxCoeff();
  }
  return out;
}

Eigen::MatrixXd gaussian_vector_draws(const CovarianceModel& model,
                                      std::int64_t r_draws, RngStream stream) {
  const std::int64_t d = model.dim();
  Eigen::MatrixXd out(r_draws, d);
  Eigen::VectorXd w(d);
  for (std::int64_t r = 0; r < r_draws; ++r) {
    for (std::int64_t j = 0; j < d; ++j) w[j] = stream.next_gaussian();
    out.row(r) = (model.factor * w).transpose();
  }
  return out;
}

namespace {

MonteCarloValue mc_summary(const std::vector<double>& xs) {
  MonteCarloValue v;
  v.value = mean(xs);
  if (xs.size() > 1) {
    v.stderr_ = std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
  }
  return v;
}

}  // namespace

MonteCarloValue gaussian_width(const Eigen::MatrixXd& gamma,
                               const NormSpecFinite& s, std::int64_t r_draws,
                               RngStream stream) {
  if (r_draws < 2) throw Error("gaussian_width: R must be >= 2");
  s.validate();
  CovarianceModel model = cholesky_with_jitter(gamma);
  const std::int64_t d = model.dim();
  std::vector<double> sups(static_cast<std::size_t>(r_draws));
  Eigen::VectorXd w(d), g(d);
  for (std::int64_t r = 0; r < r_draws; ++r) {
    for (std::int64_t j = 0; j < d; ++j) w[j] = stream.next_gaussian();
    g.noalias() = model.factor * w;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : s.directions) best = std::max(best, v.dot(g));
    sups[static_cast<std::size_t>(r)] = best;
  }
  return mc_summary(sups);
}

MonteCarloValue xi_estimate(const CovarianceModel& model, double delta,
                            std::int64_t r_draws, RngStream stream) {
  const std::int64_t d = model.dim();
  if (d > 2000) throw Error("xi_estimate: pairwise scan capped at d = 2000");

  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::int64_t j = 0; j < d; ++j) {
    for (std::int64_t l = 0; l < d; ++l) {
      double dist2 =
          model.sigma(j, j) + model.sigma(l, l) - 2.0 * model.sigma(j, l);
      if (std::sqrt(std::max(dist2, 0.0)) < delta) {
        pairs.emplace_back(static_cast<std::int32_t>(j),
                           static_cast<std::int32_t>(l));
      }
    }
  }
  if (pairs.empty()) return MonteCarloValue{0.0, 0.0};

  std::vector<double> sups(static_cast<std::size_t>(r_draws));
  Eigen::VectorXd w(d), g(d);
  for (std::int64_t r = 0; r < r_draws; ++r) {
    for (std::int64_t j = 0; j < d; ++j) w[j] = stream.next_gaussian();
    g.noalias() = model.factor * w;
    double best = -std::numeric_limits<double>::infinity();
    for (auto [j, l] : pairs) best = std::max(best, g[j] - g[l]);
    sups[static_cast<std::size_t>(r)] = best;
  }
  return mc_summary(sups);
}

NazarovReport nazarov_diagnostic(const CovarianceModel& model, double delta,
                                 const std::vector<double>& lambda_grid,
                                 std::int64_t r_draws, RngStream stream) {
  if (!(delta >= 0.0)) throw Error("nazarov_diagnostic: delta must be >= 0");
  const double sigma_lo = model.sigma_lower();
  if (!(sigma_lo > 0.0)) throw Error("nazarov_diagnostic: sigma_lower must be > 0");
  const double dd = static_cast<double>(model.dim());

  NazarovReport report;
  report.lambda_grid = lambda_grid;
  report.bound = delta / sigma_lo * (2.0 + std::sqrt(2.0 * std::log(dd)));

  std::vector<double> draws = gaussian_sup_draws(model, r_draws, stream);
  std::sort(draws.begin(), draws.end());
  report.band_probability.resize(lambda_grid.size());
  report.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    double lo = lambda_grid[i];
    double hi = lo + delta;
    auto it_lo = std::lower_bound(draws.begin(), draws.end(), lo);
    auto it_hi = std::upper_bound(draws.begin(), draws.end(), hi);
    double p = static_cast<double>(it_hi - it_lo) / static_cast<double>(r_draws);
    report.band_probability[i] = p;
    double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                          static_cast<double>(r_draws));
    report.max_stderr = std::max(report.max_stderr, se);
    report.worst_excess = std::max(report.worst_excess, p - report.bound);
  }
  report.pass = report.worst_excess <= 3.0 * report.max_stderr;
  return report;
}

}  // namespace trimclt
