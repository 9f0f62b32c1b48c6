#ifndef TRIMCLT_BOOTSTRAP_HPP
#define TRIMCLT_BOOTSTRAP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "trimclt/contamination.hpp"
#include "trimclt/estimators.hpp"
#include "trimclt/rng.hpp"

namespace trimclt {

enum class BootstrapKind {
  Empirical,          // rows resampled with replacement, unit weights
  GaussianMultiplier, // original rows, i.i.d. standard normal weights
};

std::string bootstrap_kind_name(BootstrapKind k);

/// Conditionally i.i.d. draws of the trimmed bootstrap sup-statistic, given
/// one fixed data sample.
struct BootstrapDraws {
  std::vector<double> draws;
  std::vector<double> eps_tilde;  // contaminated fraction seen by each draw
  BootstrapKind kind = BootstrapKind::Empirical;
  TrimPlan plan;
  std::uint64_t conditioning_seed = 0;
};

/// One draw of the trimmed bootstrap sup-statistic
///   max_f  sqrt(n)/(n-2k) * sum of the middle n-2k of the products
///          xi_i * (f(X~_i) - center_f),
/// where center_f is the trimmed mean of the observed sample and the
/// products are sorted per function. Weights/resampling per `kind`.
double bootstrap_statistic(const ContaminatedSample& data, const TrimPlan& plan,
                           BootstrapKind kind, RngStream stream);

/// R draws; draw r uses stream.split(r), so results do not depend on the
/// number of worker threads.
BootstrapDraws bootstrap_draws(const ContaminatedSample& data,
                               const TrimPlan& plan, BootstrapKind kind,
                               std::int64_t r_draws, RngStream stream,
                               unsigned threads = 1);

/// Type-1 empirical quantile of the draws.
double bootstrap_quantile(const BootstrapDraws& draws, double level);

namespace detail {
/// Draw with precomputed per-function centers (the trimmed means of `data`).
/// `eps_tilde_out` receives the contaminated fraction of the resample.
double bootstrap_statistic_with_centers(const ContaminatedSample& data,
                                        const TrimPlan& plan,
                                        BootstrapKind kind,
                                        const Eigen::VectorXd& centers,
                                        RngStream stream,
                                        double* eps_tilde_out);
}  // namespace detail

}  // namespace trimclt

#endif
