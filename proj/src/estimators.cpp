#include "trimclt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"

namespace trimclt {

double trimmed_mean(std::span<const double> col, std::int64_t k) {
  const std::int64_t n = static_cast<std::int64_t>(col.size());
  if (k < 0 || 2 * k >= n) {
    throw TrimTooLarge("trimmed_mean: need 0 <= 2k < n, got k=" +
                       std::to_string(k) + ", n=" + std::to_string(n));
  }
  std::vector<double> scratch;
  return trimmed_sum(col, k, scratch) / static_cast<double>(n - 2 * k);
}

Eigen::VectorXd trimmed_mean_matrix(const Eigen::MatrixXd& sample,
                                    std::int64_t k) {
  const std::int64_t n = sample.rows();
  const std::int64_t d = sample.cols();
  if (k < 0 || 2 * k >= n) {
    throw TrimTooLarge("trimmed_mean_matrix: need 0 <= 2k < n, got k=" +
                       std::to_string(k) + ", n=" + std::to_string(n));
  }
  Eigen::VectorXd out(d);
  std::vector<double> scratch;
  for (std::int64_t j = 0; j < d; ++j) {
    std::span<const double> col(sample.col(j).data(),
                                static_cast<std::size_t>(n));
    out[j] = trimmed_sum(col, k, scratch) / static_cast<double>(n - 2 * k);
  }
  return out;
}

double truncated_mean(std::span<const double> col, double trunc_level) {
  if (!(trunc_level > 0.0)) throw Error("truncation level must be > 0");
  std::vector<double> clamped(col.size());
  for (std::size_t i = 0; i < col.size(); ++i) {
    clamped[i] = std::clamp(col[i], -trunc_level, trunc_level);
  }
  return mean(clamped);
}

std::int64_t gaussian_tail_budget(std::int64_t n, std::int64_t d, double p) {
  double nn = static_cast<double>(n), dd = static_cast<double>(d);
  double expo = (p - 2.0) / (4.0 * p - 2.0);
  double v = 3.0 * std::log1p(dd) + 7.0 * std::pow(nn, expo) * std::log(nn * dd);
  return static_cast<std::int64_t>(std::ceil(v));
}

double truncation_level(std::int64_t n, std::int64_t d, double p,
                        double nu_p) {
  double nn = static_cast<double>(n), dd = static_cast<double>(d);
  return std::pow(nn, 3.0 / (4.0 * p - 2.0)) * nu_p *
         std::pow(std::log(nn * dd), -1.0 / p);
}

std::int64_t bootstrap_tail_budget(std::int64_t n, std::int64_t d, double p,
                                   double nu_p, double trunc_level) {
  double nn = static_cast<double>(n), dd = static_cast<double>(d);
  double v = 24.0 * std::log1p(dd) +
             49.0 * nn * std::pow(nu_p / trunc_level, p);
  return static_cast<std::int64_t>(std::ceil(v));
}

namespace {

void check_plan_inputs(std::int64_t n, std::int64_t d, double epsilon,
                       double p, double nu_p) {
  if (n < 3) throw Error("plan: n must be >= 3");
  if (d < 2) throw Error("plan: d must be >= 2");
  if (!(p > 2.0)) throw Error("plan: p must be > 2");
  if (!(nu_p > 0.0)) throw Error("plan: nu_p must be > 0");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw EpsilonOutOfRange("plan: epsilon must lie in [0, 1/2)");
  }
}

}  // namespace

TrimPlan plan_gaussian(std::int64_t n, std::int64_t d, double epsilon,
                       double p, double nu_p) {
  check_plan_inputs(n, d, epsilon, p, nu_p);
  TrimPlan plan;
  plan.epsilon = epsilon;
  plan.p = p;
  plan.n = n;
  plan.d = d;
  plan.nu_p = nu_p;
  plan.tail_budget = gaussian_tail_budget(n, d, p);
  plan.k = floor_count(epsilon * static_cast<double>(n)) + plan.tail_budget;
  plan.trunc_level = truncation_level(n, d, p, nu_p);
  plan.phi = static_cast<double>(plan.k) / static_cast<double>(n);
  if (2 * plan.k >= n) {
    throw InfeasibleTrim("plan_gaussian: k=" + std::to_string(plan.k) +
                         " >= n/2 with n=" + std::to_string(n));
  }
  return plan;
}

TrimPlan plan_bootstrap(std::int64_t n, std::int64_t d, double epsilon,
                        double p, double nu_p) {
  check_plan_inputs(n, d, epsilon, p, nu_p);
  TrimPlan plan;
  plan.epsilon = epsilon;
  plan.p = p;
  plan.n = n;
  plan.d = d;
  plan.nu_p = nu_p;
  plan.trunc_level = truncation_level(n, d, p, nu_p);
  plan.tail_budget = bootstrap_tail_budget(n, d, p, nu_p, plan.trunc_level);
  const double eps_n = epsilon * static_cast<double>(n);
  const double t = static_cast<double>(plan.tail_budget);
  plan.k = floor_count(eps_n + std::max(eps_n, t)) + plan.tail_budget;
  plan.phi = static_cast<double>(plan.k) / static_cast<double>(n);
  if (2 * plan.k >= n) {
    throw InfeasibleTrim("plan_bootstrap: phi=" + std::to_string(plan.phi) +
                         " >= 1/2 with n=" + std::to_string(n));
  }
  return plan;
}

bool check_feasibility(const TrimPlan& plan, double sigma_lower) {
  if (!(sigma_lower > 0.0)) throw Error("sigma_lower must be > 0");
  double nn = static_cast<double>(plan.n), dd = static_cast<double>(plan.d);
  double lhs = plan.nu_p * plan.nu_p *
               std::pow(nn, -(3.0 * plan.p - 6.0) / (4.0 * plan.p - 2.0)) *
               std::pow(std::log(nn * dd), 1.0 - 2.0 / plan.p);
  return lhs <= 0.375 * sigma_lower;
}

TrimPlan lemma_plan(std::int64_t n, std::int64_t d, double epsilon, double p,
                    double nu_p) {
  try {
    return plan_gaussian(n, d, epsilon, p, nu_p);
  } catch (const InfeasibleTrim&) {
  }
  // Raise M until the tail budget fits a 0.45 n trim fraction; the bounding
  // lemma only needs floor(eps n) + t <= phi n < n/2 and V_M <= t.
  TrimPlan plan;
  plan.epsilon = epsilon;
  plan.p = p;
  plan.n = n;
  plan.d = d;
  plan.nu_p = nu_p;
  const std::int64_t eps_rows = floor_count(epsilon * static_cast<double>(n));
  const std::int64_t budget_max =
      static_cast<std::int64_t>(0.45 * static_cast<double>(n)) - eps_rows;
  if (budget_max < 1) {
    throw InfeasibleTrim("lemma_plan: no room below n/2 at epsilon=" +
                         std::to_string(epsilon));
  }
  double head = static_cast<double>(budget_max) -
                3.0 * std::log1p(static_cast<double>(d)) - 1.0;
  if (head < 1.0) {
    throw InfeasibleTrim("lemma_plan: dimension term alone exceeds the trim room");
  }
  double m_min = nu_p * std::pow(7.0 * static_cast<double>(n) / head, 1.0 / p);
  plan.trunc_level = std::max(truncation_level(n, d, p, nu_p), m_min);
  double counting = 3.0 * std::log1p(static_cast<double>(d)) +
                    7.0 * static_cast<double>(n) *
                        std::pow(nu_p / plan.trunc_level, p);
  plan.tail_budget = static_cast<std::int64_t>(std::ceil(counting));
  plan.k = eps_rows + plan.tail_budget;
  plan.phi = static_cast<double>(plan.k) / static_cast<double>(n);
  if (2 * plan.k >= n) {
    throw InfeasibleTrim("lemma_plan: still infeasible after raising M");
  }
  return plan;
}

}  // namespace trimclt
