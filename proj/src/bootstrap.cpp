#include "trimclt/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"
#include "trimclt/parallel.hpp"

namespace trimclt {

std::string bootstrap_kind_name(BootstrapKind k) {
  switch (k) {
    case BootstrapKind::Empirical: return "empirical";
    case BootstrapKind::GaussianMultiplier: return "multiplier";
  }
  return "?";
}

namespace detail {

double bootstrap_statistic_with_centers(const ContaminatedSample& data,
                                        const TrimPlan& plan,
                                        BootstrapKind kind,
                                        const Eigen::VectorXd& centers,
                                        RngStream stream,
                                        double* eps_tilde_out) {
  const std::int64_t n = data.n();
  const std::int64_t d = data.d();
  const std::int64_t k = plan.k;
  if (k < 0 || 2 * k >= n) {
    throw TrimTooLarge("bootstrap_statistic: need 0 <= 2k < n");
  }

  std::vector<std::int64_t> idx;
  std::vector<double> xi;
  std::int64_t contaminated = 0;

  if (kind == BootstrapKind::Empirical) {
    idx.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t r = static_cast<std::int64_t>(
          stream.next_below(static_cast<std::uint64_t>(n)));
      idx[static_cast<std::size_t>(i)] = r;
      contaminated += data.mask[static_cast<std::size_t>(r)];
    }
  } else {
    xi.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) xi[static_cast<std::size_t>(i)] = stream.next_gaussian();
    contaminated = data.replaced_count();
  }
  if (eps_tilde_out) {
    *eps_tilde_out = static_cast<double>(contaminated) / static_cast<double>(n);
  }

  const double scale =
      std::sqrt(static_cast<double>(n)) / static_cast<double>(n - 2 * k);
  std::vector<double> products(static_cast<std::size_t>(n));
  std::vector<double> scratch;
  double sup = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < d; ++j) {
    const double* col = data.values.col(j).data();
    const double c = centers[j];
    if (kind == BootstrapKind::Empirical) {
      for (std::int64_t i = 0; i < n; ++i) {
        products[static_cast<std::size_t>(i)] =
            col[idx[static_cast<std::size_t>(i)]] - c;
      }
    } else {
      for (std::int64_t i = 0; i < n; ++i) {
        products[static_cast<std::size_t>(i)] =
            xi[static_cast<std::size_t>(i)] * (col[i] - c);
      }
    }
    double stat = scale * trimmed_sum(products, k, scratch);
    sup = std::max(sup, stat);
  }
  return sup;
}

}  // namespace detail

double bootstrap_statistic(const ContaminatedSample& data, const TrimPlan& plan,
                           BootstrapKind kind, RngStream stream) {
  Eigen::VectorXd centers = trimmed_mean_matrix(data.values, plan.k);
  return detail::bootstrap_statistic_with_centers(data, plan, kind, centers,
                                                  stream, nullptr);
}

BootstrapDraws bootstrap_draws(const ContaminatedSample& data,
                               const TrimPlan& plan, BootstrapKind kind,
                               std::int64_t r_draws, RngStream stream,
                               unsigned threads) {
  if (r_draws < 1) throw Error("bootstrap_draws: R must be >= 1");
  BootstrapDraws out;
  out.kind = kind;
  out.plan = plan;
  out.conditioning_seed = stream.key();
  out.draws.resize(static_cast<std::size_t>(r_draws));
  out.eps_tilde.resize(static_cast<std::size_t>(r_draws));

  const Eigen::VectorXd centers = trimmed_mean_matrix(data.values, plan.k);
  parallel_for(static_cast<std::size_t>(r_draws), threads, [&](std::size_t r) {
    double et = 0.0;
    out.draws[r] = detail::bootstrap_statistic_with_centers(
        data, plan, kind, centers, stream.split(r), &et);
    out.eps_tilde[r] = et;
  });
  return out;
}

double bootstrap_quantile(const BootstrapDraws& draws, double level) {
  std::vector<double> sorted = draws.draws;
  std::sort(sorted.begin(), sorted.end());
  return quantile_type1_sorted(sorted, level);
}

}  // namespace trimclt
