#ifndef TRIMCLT_NUMERIC_HPP
#define TRIMCLT_NUMERIC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trimclt {

/// Pairwise (tree) summation with the canonical split: blocks of at most 16
/// summed left to right, longer ranges split at the midpoint. This order is
/// the library-wide convention, so equal sequences sum bit-identically.
double pairwise_sum(std::span<const double> xs);

/// pairwise_sum(xs) / xs.size(); the canonical mean.
double mean(std::span<const double> xs);

/// Unbiased sample variance (pairwise sums).
double sample_variance(std::span<const double> xs);

/// floor(x) with a tiny forgiveness for decimal inputs like 0.3 * 10 that
/// land one ulp under an integer.
std::int64_t floor_count(double x);

/// Sum of the values that survive discarding the k smallest and k largest,
/// gathered in original index order (ties at the trim boundaries resolved as
/// a stable sort would: earliest copies drop at the bottom, latest at the
/// top). O(n) selection; bit-identical to the stable-argsort definition.
/// `scratch` is reused storage, resized as needed.
double trimmed_sum(std::span<const double> xs, std::int64_t k,
                   std::vector<double>& scratch);

/// Type-1 (inverted ECDF) empirical quantile: the ceil(level*n)-th smallest.
/// `sorted` must be ascending.
double quantile_type1_sorted(std::span<const double> sorted, double level);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

}  // namespace trimclt

#endif
