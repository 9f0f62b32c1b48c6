#include "trimclt/vecmean.hpp"

#include <algorithm>
#include <cmath>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"

namespace trimclt {

std::vector<double> directional_trimmed_means(const ContaminatedSample& data,
                                              const NormSpecFinite& s,
                                              std::int64_t k) {
  s.validate();
  const std::int64_t n = data.n();
  if (k < 0 || 2 * k >= n) {
    throw TrimTooLarge("directional_trimmed_means: need 0 <= 2k < n");
  }
  std::vector<double> out;
  out.reserve(s.directions.size());
  std::vector<double> proj(static_cast<std::size_t>(n));
  std::vector<double> scratch;
  for (const auto& v : s.directions) {
    Eigen::VectorXd p = data.values * v;
    for (std::int64_t i = 0; i < n; ++i) proj[static_cast<std::size_t>(i)] = p[i];
    out.push_back(trimmed_sum(proj, k, scratch) /
                  static_cast<double>(n - 2 * k));
  }
  return out;
}

namespace {

double recompute_objective(const std::vector<double>& tvals,
                           const NormSpecFinite& s,
                           const Eigen::VectorXd& mu) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.directions.size(); ++i) {
    worst = std::max(worst, std::abs(tvals[i] - s.directions[i].dot(mu)));
  }
  return worst;
}

struct SimplexResult {
  bool ok = false;
  Eigen::VectorXd x;  // structural variables (mu, t)
  std::vector<int> tight_rows;
};

// Dense two-phase simplex with Bland's rule on
//   min t  s.t.  <v,mu> - t <= T_v,  -<v,mu> - t <= -T_v.
// Free variables are split into positive and negative parts.
SimplexResult solve_lp(const std::vector<double>& tvals,
                       const NormSpecFinite& s) {
  const int d = static_cast<int>(s.dim());
  const int m = 2 * static_cast<int>(s.directions.size());
  const int nstruct = 2 * (d + 1);
  const int ncols = nstruct + m;  // + slacks

  Eigen::MatrixXd rows(m, d + 1);  // original inequality coefficients
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m / 2; ++i) {
    const auto& v = s.directions[static_cast<std::size_t>(i)];
    rows.row(2 * i).head(d) = v.transpose();
    rows(2 * i, d) = -1.0;
    rhs[2 * i] = tvals[static_cast<std::size_t>(i)];
    rows.row(2 * i + 1).head(d) = -v.transpose();
    rows(2 * i + 1, d) = -1.0;
    rhs[2 * i + 1] = -tvals[static_cast<std::size_t>(i)];
  }

  // Equality tableau with split variables and slacks; flip rows to b >= 0.
  Eigen::MatrixXd a(m, ncols);
  Eigen::VectorXd b = rhs;
  a.setZero();
  for (int i = 0; i < m; ++i) {
    double flip = (b[i] < 0.0) ? -1.0 : 1.0;
    b[i] *= flip;
    for (int j = 0; j <= d; ++j) {
      a(i, j) = flip * rows(i, j);
      a(i, d + 1 + j) = -flip * rows(i, j);
    }
    a(i, nstruct + i) = flip;
  }

  // Phase 1: artificials where the slack entered with -1.
  std::vector<int> basis(m);
  int nart = 0;
  for (int i = 0; i < m; ++i) {
    if (a(i, nstruct + i) > 0.0) {
      basis[i] = nstruct + i;
    } else {
      basis[i] = ncols + nart;
      ++nart;
    }
  }
  int total = ncols + nart;
  Eigen::MatrixXd tab(m, total + 1);
  tab.setZero();
  tab.leftCols(ncols) = a;
  {
    int art = 0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= ncols) tab(i, ncols + art++) = 1.0;
    }
  }
  tab.col(total) = b;

  auto run_phase = [&](const Eigen::VectorXd& cost, int active_cols) -> bool {
    const int iter_cap = 200 * (m + active_cols) + 2000;
    for (int iter = 0; iter < iter_cap; ++iter) {
      // reduced costs c_j - c_B^T (B^{-1} A)_j; the tableau holds B^{-1} A.
      Eigen::VectorXd cb(m);
      for (int i = 0; i < m; ++i) cb[i] = cost[basis[i]];
      int enter = -1;
      for (int j = 0; j < active_cols; ++j) {
        double rc = cost[j] - cb.dot(tab.col(j));
        if (rc < -1e-10) {  // Bland: first improving index
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double aij = tab(i, enter);
        if (aij > 1e-12) {
          double ratio = tab(i, total) / aij;
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded; cannot happen here
      double piv = tab(leave, enter);
      tab.row(leave) /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        double f = tab(i, enter);
        if (f != 0.0) tab.row(i) -= f * tab.row(leave);
      }
      basis[leave] = enter;
    }
    return false;
  };

  if (nart > 0) {
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(total);
    for (int j = ncols; j < total; ++j) cost1[j] = 1.0;
    if (!run_phase(cost1, total)) return {};
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= ncols) art_sum += tab(i, total);
    }
    if (art_sum > 1e-8) return {};  // infeasible; cannot happen here
    // Pivot lingering artificials out of the basis when possible.
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= ncols) {
        for (int j = 0; j < ncols; ++j) {
          if (std::abs(tab(i, j)) > 1e-9) {
            double piv = tab(i, j);
            tab.row(i) /= piv;
            for (int r = 0; r < m; ++r) {
              if (r == i) continue;
              double f = tab(r, j);
              if (f != 0.0) tab.row(r) -= f * tab.row(i);
            }
            basis[i] = j;
            break;
          }
        }
      }
    }
  }

  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(total);
  cost2[d] = 1.0;          // t+
  cost2[d + 1 + d] = -1.0;  // t-
  if (!run_phase(cost2, ncols)) return {};

  SimplexResult res;
  res.ok = true;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(total);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < total) full[basis[i]] = tab(i, total);
  }
  res.x.resize(d + 1);
  for (int j = 0; j <= d; ++j) res.x[j] = full[j] - full[d + 1 + j];
  // Tight rows: slack at zero.
  for (int i = 0; i < m; ++i) {
    if (full[nstruct + i] <= 1e-9) res.tight_rows.push_back(i);
  }
  return res;
}

// Re-solves (mu, t) from a maximal independent subset of tight rows using
// elimination on the original coefficients; with paired +-v rows this
// cancels exactly and removes the drift a long pivot sequence accumulates.
bool resolve_from_tight_rows(const std::vector<double>& tvals,
                             const NormSpecFinite& s,
                             const std::vector<int>& tight,
                             Eigen::VectorXd* out) {
  const int d = static_cast<int>(s.dim());
  if (tight.empty()) return false;
  Eigen::MatrixXd sel(d + 1, d + 1);
  Eigen::VectorXd rhs(d + 1);
  int have = 0;
  for (int row : tight) {
    int v_idx = row / 2;
    double sign = (row % 2 == 0) ? 1.0 : -1.0;
    Eigen::VectorXd cand(d + 1);
    cand.head(d) = sign * s.directions[static_cast<std::size_t>(v_idx)];
    cand[d] = -1.0;
    // accept if it enlarges the span
    sel.row(have) = cand.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sel.topRows(have + 1));
    if (lu.rank() == have + 1) {
      rhs[have] = sign * tvals[static_cast<std::size_t>(v_idx)];
      ++have;
      if (have == d + 1) break;
    }
  }
  if (have != d + 1) return false;
  Eigen::PartialPivLU<Eigen::MatrixXd> solver(sel);
  Eigen::VectorXd x = solver.solve(rhs);
  if (!x.allFinite()) return false;
  *out = x;
  return true;
}

MinimaxSolution subgradient_fallback(const std::vector<double>& tvals,
                                     const NormSpecFinite& s) {
  const std::int64_t d = s.dim();
  MinimaxSolution sol;
  sol.status = SolverStatus::IterLimit;
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd best_mu = mu;
  double best = recompute_objective(tvals, s, mu);
  double vmax = 0.0;
  for (const auto& v : s.directions) vmax = std::max(vmax, v.norm());
  double step0 = (best + 1.0) / std::max(vmax, 1e-12);
  const int cap = 100000;
  for (int it = 0; it < cap; ++it) {
    // steepest violated direction
    std::size_t worst = 0;
    double worst_val = -1.0, worst_res = 0.0;
    for (std::size_t i = 0; i < s.directions.size(); ++i) {
      double r = tvals[i] - s.directions[i].dot(mu);
      if (std::abs(r) > worst_val) {
        worst_val = std::abs(r);
        worst_res = r;
        worst = i;
      }
    }
    Eigen::VectorXd g = (worst_res > 0 ? -1.0 : 1.0) * s.directions[worst];
    mu -= step0 / std::sqrt(static_cast<double>(it + 1)) * g;
    double obj = recompute_objective(tvals, s, mu);
    if (obj < best) {
      best = obj;
      best_mu = mu;
    }
  }
  sol.mu_hat = best_mu;
  sol.objective = best;
  sol.duality_gap = std::numeric_limits<double>::quiet_NaN();
  return sol;
}

}  // namespace

MinimaxSolution minimax_mean(const std::vector<double>& tvals,
                             const NormSpecFinite& s) {
  if (s.directions.empty()) throw DegenerateNormSpec("minimax_mean: S is empty");
  s.validate();
  if (tvals.size() != s.directions.size()) {
    throw Error("minimax_mean: tvals and S must align");
  }
  if (s.directions.size() > 10000) {
    throw Error("minimax_mean: dense simplex capped at |S| = 10^4");
  }
  const std::int64_t d = s.dim();

  bool nonunique = false;
  {
    Eigen::MatrixXd span(static_cast<std::int64_t>(s.directions.size()), d);
    for (std::size_t i = 0; i < s.directions.size(); ++i) {
      span.row(static_cast<std::int64_t>(i)) = s.directions[i].transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(span);
    nonunique = lu.rank() < d;
  }

  SimplexResult lp = solve_lp(tvals, s);
  if (!lp.ok) {
    MinimaxSolution sol = subgradient_fallback(tvals, s);
    sol.flagged_nonunique = nonunique;
    return sol;
  }

  Eigen::VectorXd x = lp.x;
  Eigen::VectorXd refined;
  if (resolve_from_tight_rows(tvals, s, lp.tight_rows, &refined)) {
    double obj_ref = recompute_objective(tvals, s, refined.head(d));
    double obj_tab = recompute_objective(tvals, s, x.head(d));
    if (obj_ref <= obj_tab + 1e-12 * (1.0 + std::abs(obj_tab))) x = refined;
  }

  MinimaxSolution sol;
  sol.mu_hat = x.head(d);
  sol.objective = recompute_objective(tvals, s, sol.mu_hat);
  sol.duality_gap = std::abs(sol.objective - x[d]);
  sol.status = SolverStatus::Optimal;
  sol.flagged_nonunique = nonunique;
  return sol;
}

VecMeanPlan vecmean_plan(std::int64_t n, std::int64_t d, double epsilon,
                         double p, double c_knob) {
  if (n < 3) throw Error("vecmean_plan: n must be >= 3");
  if (!(p > 2.0)) throw Error("vecmean_plan: p must be > 2");
  if (!(c_knob > 0.0)) throw Error("vecmean_plan: C must be > 0");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw EpsilonOutOfRange("vecmean_plan: epsilon must lie in [0, 1/2)");
  }
  VecMeanPlan plan;
  plan.c_knob = c_knob;
  double ln_n = std::log(static_cast<double>(n));
  double ln_8e = std::log(8.0 * std::exp(1.0));
  plan.k_n = (2.0 * static_cast<double>(d) + 4.0) * std::max(ln_n, ln_8e);
  double expo = (p - 2.0) / (4.0 * p - 2.0);
  plan.k = floor_count(epsilon * static_cast<double>(n)) +
           static_cast<std::int64_t>(std::ceil(
               c_knob * std::pow(static_cast<double>(n), expo) * plan.k_n));
  if (2 * plan.k >= n) {
    throw InfeasibleTrim("vecmean_plan: k=" + std::to_string(plan.k) +
                         " >= n/2 with n=" + std::to_string(n));
  }
  return plan;
}

bool check_lemma_5_2(const Eigen::VectorXd& mu_hat,
                     const std::vector<double>& tvals,
                     const Eigen::VectorXd& mu_true, const NormSpecFinite& s,
                     double tolerance) {
  double lhs = s.norm(mu_hat - mu_true);
  double rhs = 0.0;
  for (std::size_t i = 0; i < s.directions.size(); ++i) {
    rhs = std::max(rhs, std::abs(tvals[i] - s.directions[i].dot(mu_true)));
  }
  return lhs <= 2.0 * rhs + tolerance;
}

}  // namespace trimclt
