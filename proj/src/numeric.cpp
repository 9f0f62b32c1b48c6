#include "trimclt/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trimclt/errors.hpp"

namespace trimclt {

namespace {

double pairwise_sum_impl(const double* xs, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_impl(xs.data(), xs.size());
}

double mean(std::span<const double> xs) {
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double m = mean(xs);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    double c = xs[i] - m;
    sq[i] = c * c;
  }
  return pairwise_sum(sq) / static_cast<double>(n - 1);
}

std::int64_t floor_count(double x) {
  return static_cast<std::int64_t>(std::floor(x + 1e-9));
}

double trimmed_sum(std::span<const double> xs, std::int64_t k,
                   std::vector<double>& scratch) {
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
  if (k < 0 || 2 * k >= n) {
    throw TrimTooLarge("trimmed_sum: need 0 <= 2k < n, got k=" +
                       std::to_string(k) + ", n=" + std::to_string(n));
  }
  scratch.assign(xs.begin(), xs.end());
  if (k == 0) return pairwise_sum(xs);

  // Order statistics at the trim boundaries.
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
  const double lo = scratch[k - 1];  // largest dropped at the bottom
  std::nth_element(scratch.begin() + k, scratch.begin() + (n - k),
                   scratch.end());
  const double hi = scratch[n - k];  // smallest dropped at the top

  // Count boundary ties so exactly k are dropped on each side. A stable sort
  // drops the earliest copies of `lo` and the latest copies of `hi`.
  std::int64_t below_lo = 0, eq_lo = 0, above_hi = 0, eq_hi = 0;
  for (double x : xs) {
    if (x < lo) ++below_lo;
    else if (x == lo) ++eq_lo;
    if (x > hi) ++above_hi;
    else if (x == hi) ++eq_hi;
  }
  std::int64_t drop_lo = k - below_lo;          // copies of lo to drop
  std::int64_t keep_hi = eq_hi - (k - above_hi);  // leading copies of hi kept

  scratch.clear();
  std::int64_t lo_left = drop_lo;
  std::int64_t hi_kept = 0;
  for (double x : xs) {
    if (x < lo || x > hi) continue;
    if (x == lo && lo != hi) {
      if (lo_left > 0) {
        --lo_left;
        continue;
      }
    } else if (x == hi && lo != hi) {
      if (hi_kept >= keep_hi) continue;
      ++hi_kept;
    } else if (x == lo && lo == hi) {
      // Degenerate band: all kept values equal lo; keep the stable window.
      if (lo_left > 0) {
        --lo_left;
        continue;
      }
      if (hi_kept >= n - 2 * k) continue;
      ++hi_kept;
    }
    scratch.push_back(x);
  }
  return pairwise_sum(scratch);
}

double quantile_type1_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw Error("quantile of empty sample");
  if (!(level > 0.0 && level < 1.0)) {
    throw Error("quantile level must lie in (0,1)");
  }
  const std::size_t n = sorted.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(level * static_cast<double>(n) - 1e-12));
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  return sorted[idx - 1];
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

}  // namespace trimclt
