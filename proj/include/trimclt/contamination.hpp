#ifndef TRIMCLT_CONTAMINATION_HPP
#define TRIMCLT_CONTAMINATION_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "trimclt/distributions.hpp"
#include "trimclt/rng.hpp"

namespace trimclt {

enum class AdversaryKind {
  None,
  LargeOutlier,   // spike one coordinate of each replaced row to +magnitude
  OppositeShift,  // shift replaced rows against each column's sign of mean
  MaxSpread,      // push replaced rows beyond both column extremes
};

enum class TargetRows {
  LargestInfNorm,  // deterministic, adversarially plausible default
  First,
  Random,
};

std::string adversary_name(AdversaryKind k);

struct AdversaryPolicy {
  AdversaryKind kind = AdversaryKind::None;
  double magnitude = 1e6;
  TargetRows target = TargetRows::LargestInfNorm;
};

/// A sample that differs from its clean origin in at most floor(eps*n) rows.
struct ContaminatedSample {
  Eigen::MatrixXd values;       // what the estimators see
  Eigen::MatrixXd clean_values; // withheld ground truth
  std::vector<std::uint8_t> mask;  // 1 = replaced row
  double epsilon = 0.0;

  std::int64_t n() const { return values.rows(); }
  std::int64_t d() const { return values.cols(); }
  std::int64_t replaced_count() const;
};

/// Applies the policy to at most floor(eps*n) rows. The adversary sees the
/// clean sample. Deterministic given (clean, eps, policy, stream).
ContaminatedSample contaminate(const SampleMatrix& clean, double epsilon,
                               const AdversaryPolicy& policy, RngStream stream);

}  // namespace trimclt

#endif
