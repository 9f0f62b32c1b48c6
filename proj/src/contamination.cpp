#include "trimclt/contamination.hpp"

#include <algorithm>
#include <numeric>

#include "trimclt/errors.hpp"
#include "trimclt/numeric.hpp"

namespace trimclt {

std::string adversary_name(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::LargeOutlier: return "large_outlier";
    case AdversaryKind::OppositeShift: return "opposite_shift";
    case AdversaryKind::MaxSpread: return "max_spread";
  }
  return "?";
}

std::int64_t ContaminatedSample::replaced_count() const {
  std::int64_t c = 0;
  for (auto b : mask) c += b;
  return c;
}

namespace {

std::vector<std::int64_t> pick_rows(const Eigen::MatrixXd& clean,
                                    std::int64_t budget, TargetRows target,
                                    RngStream& stream) {
  const std::int64_t n = clean.rows();
  std::vector<std::int64_t> rows;
  if (budget <= 0) return rows;
  switch (target) {
    case TargetRows::First: {
      for (std::int64_t i = 0; i < budget; ++i) rows.push_back(i);
      break;
    }
    case TargetRows::Random: {
      std::vector<std::int64_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      for (std::int64_t i = 0; i < budget; ++i) {
        std::int64_t j = i + static_cast<std::int64_t>(
                                 stream.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(all[i], all[j]);
        rows.push_back(all[i]);
      }
      std::sort(rows.begin(), rows.end());
      break;
    }
    case TargetRows::LargestInfNorm: {
      std::vector<std::pair<double, std::int64_t>> norm(n);
      for (std::int64_t i = 0; i < n; ++i) {
        norm[i] = {clean.row(i).cwiseAbs().maxCoeff(), i};
      }
      // largest norms first, ties by original index
      std::stable_sort(norm.begin(), norm.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
      });
      for (std::int64_t i = 0; i < budget; ++i) rows.push_back(norm[i].second);
      std::sort(rows.begin(), rows.end());
      break;
    }
  }
  return rows;
}

}  // namespace

ContaminatedSample contaminate(const SampleMatrix& clean, double epsilon,
                               const AdversaryPolicy& policy, RngStream stream) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw EpsilonOutOfRange("epsilon must lie in [0, 1/2), got " +
                            std::to_string(epsilon));
  }
  const std::int64_t n = clean.n();
  const std::int64_t d = clean.d();

  ContaminatedSample out;
  out.clean_values = clean.values;
  out.values = clean.values;
  out.mask.assign(static_cast<std::size_t>(n), 0);
  out.epsilon = epsilon;

  const std::int64_t budget = floor_count(epsilon * static_cast<double>(n));
  if (policy.kind == AdversaryKind::None || budget == 0) return out;

  const auto rows = pick_rows(clean.values, budget, policy.target, stream);
  for (auto r : rows) out.mask[static_cast<std::size_t>(r)] = 1;

  switch (policy.kind) {
    case AdversaryKind::None:
      break;
    case AdversaryKind::LargeOutlier: {
      // One coordinate spiked per replaced row; the rest of the row is left
      // as drawn, so the spike displaces a single column mean.
      for (auto r : rows) out.values(r, 0) = policy.magnitude;
      break;
    }
    case AdversaryKind::OppositeShift: {
      Eigen::VectorXd shift(d);
      for (std::int64_t j = 0; j < d; ++j) {
        double mj = clean.values.col(j).mean();
        shift[j] = (mj >= 0.0 ? -1.0 : 1.0) * policy.magnitude;
      }
      for (auto r : rows) out.values.row(r) += shift.transpose();
      break;
    }
    case AdversaryKind::MaxSpread: {
      Eigen::VectorXd hi(d), lo(d);
      for (std::int64_t j = 0; j < d; ++j) {
        hi[j] = clean.values.col(j).maxCoeff() + policy.magnitude;
        lo[j] = clean.values.col(j).minCoeff() - policy.magnitude;
      }
      for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        out.values.row(rows[idx]) =
            (idx % 2 == 0) ? hi.transpose() : lo.transpose();
      }
      break;
    }
  }
  return out;
}

}  // namespace trimclt
