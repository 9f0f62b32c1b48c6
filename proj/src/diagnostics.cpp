#include "trimclt/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "trimclt/errors.hpp"
#include "trimclt/experiments.hpp"
#include "trimclt/numeric.hpp"

namespace trimclt {

namespace {

constexpr double kRelSlack = 1e-10;

double binomial_se(double freq, std::int64_t r) {
  return std::sqrt(std::max(freq * (1.0 - freq), 0.0) /
                   static_cast<double>(r));
}

void finalize_frequency(LemmaReport& rep, double paper_bound) {
  rep.violation_frequency =
      rep.instances_checked > 0
          ? static_cast<double>(rep.violations) /
                static_cast<double>(rep.instances_checked)
          : 0.0;
  rep.frequency_allowance =
      paper_bound +
      3.0 * binomial_se(rep.violation_frequency, rep.instances_checked);
  rep.bound = paper_bound;
  rep.observed = rep.violation_frequency;
  rep.passed = rep.violation_frequency <= rep.frequency_allowance;
}

}  // namespace

void merge_reports(LemmaReport& into, const LemmaReport& from) {
  if (into.lemma_id.empty()) into.lemma_id = from.lemma_id;
  into.instances_checked += from.instances_checked;
  into.skipped += from.skipped;
  into.violations += from.violations;
  into.worst_slack = std::min(into.worst_slack, from.worst_slack);
  into.passed = into.passed && from.passed;
}

std::int64_t count_exceedances(const Eigen::MatrixXd& sample, double m_level) {
  if (!(m_level > 0.0)) throw Error("count_exceedances: M must be > 0");
  std::int64_t worst = 0;
  for (std::int64_t j = 0; j < sample.cols(); ++j) {
    std::int64_t c = 0;
    const double* col = sample.col(j).data();
    for (std::int64_t i = 0; i < sample.rows(); ++i) {
      if (std::abs(col[i]) > m_level) ++c;
    }
    worst = std::max(worst, c);
  }
  return worst;
}

LemmaReport check_bounding_lemma(const ContaminatedSample& data,
                                 const TrimPlan& plan) {
  LemmaReport rep;
  rep.lemma_id = "bounding";
  const std::int64_t n = data.n();
  const double m_level = plan.trunc_level;
  const double phi = plan.phi;

  const bool phi_ok =
      floor_count(plan.epsilon * static_cast<double>(n)) + plan.tail_budget <=
          plan.k &&
      2 * plan.k < n;
  const bool v_ok =
      count_exceedances(data.clean_values, m_level) <= plan.tail_budget;
  if (!phi_ok || !v_ok) {
    rep.skipped = 1;
    return rep;
  }

  rep.instances_checked = 1;
  const double bound = 6.0 * phi * m_level;
  std::vector<double> clamped(static_cast<std::size_t>(n));
  std::vector<double> scratch;
  for (std::int64_t j = 0; j < data.d(); ++j) {
    std::span<const double> col(data.values.col(j).data(),
                                static_cast<std::size_t>(n));
    double trimmed =
        trimmed_sum(col, plan.k, scratch) / static_cast<double>(n - 2 * plan.k);
    const double* clean = data.clean_values.col(j).data();
    for (std::int64_t i = 0; i < n; ++i) {
      clamped[static_cast<std::size_t>(i)] =
          std::clamp(clean[i], -m_level, m_level);
    }
    double truncated = mean(clamped);
    double lhs = std::abs(trimmed - truncated);
    rep.worst_slack = std::min(rep.worst_slack, bound - lhs);
    if (lhs > bound * (1.0 + kRelSlack) + 1e-300) ++rep.violations;
  }
  rep.observed = bound - rep.worst_slack;
  rep.bound = bound;
  rep.passed = rep.violations == 0;
  return rep;
}

LemmaReport check_gaussian_bounding_lemma(const ContaminatedSample& data,
                                          const TrimPlan& plan,
                                          RngStream stream,
                                          std::int64_t r_draws) {
  LemmaReport rep;
  rep.lemma_id = "gaussian_bounding";
  const std::int64_t n = data.n();
  const std::int64_t d = data.d();
  const double m_level = plan.trunc_level;
  const double phi = plan.phi;

  if (count_exceedances(data.clean_values, m_level) > plan.tail_budget ||
      2 * plan.k >= n) {
    rep.skipped = 1;
    return rep;
  }

  const double nn = static_cast<double>(n);
  const double bound = 28.0 * phi * m_level * std::sqrt(2.0 * nn * std::log(2.0 * nn)) +
                       6.0 * phi * m_level * std::sqrt(2.0 * std::log(nn));

  // Precompute clamped clean columns, their means, and the observed centers.
  Eigen::MatrixXd clamped(n, d);
  for (std::int64_t j = 0; j < d; ++j) {
    for (std::int64_t i = 0; i < n; ++i) {
      clamped(i, j) = std::clamp(data.clean_values(i, j), -m_level, m_level);
    }
  }
  Eigen::VectorXd clamped_mean(d);
  for (std::int64_t j = 0; j < d; ++j) {
    std::span<const double> col(clamped.col(j).data(),
                                static_cast<std::size_t>(n));
    clamped_mean[j] = mean(col);
  }
  const Eigen::VectorXd centers = trimmed_mean_matrix(data.values, plan.k);

  const double scale = std::sqrt(nn) / static_cast<double>(n - 2 * plan.k);
  const double root_n = std::sqrt(nn);

  rep.instances_checked = r_draws;
  std::vector<double> xi(static_cast<std::size_t>(n));
  std::vector<double> products(static_cast<std::size_t>(n));
  std::vector<double> weighted(static_cast<std::size_t>(n));
  std::vector<double> scratch;
  for (std::int64_t r = 0; r < r_draws; ++r) {
    RngStream draw = stream.split(static_cast<std::uint64_t>(r));
    for (std::int64_t i = 0; i < n; ++i) xi[static_cast<std::size_t>(i)] = draw.next_gaussian();
    double sup = 0.0;
    for (std::int64_t j = 0; j < d; ++j) {
      const double* col = data.values.col(j).data();
      const double* tau = clamped.col(j).data();
      const double c = centers[j];
      const double mt = clamped_mean[j];
      for (std::int64_t i = 0; i < n; ++i) {
        double w = xi[static_cast<std::size_t>(i)];
        products[static_cast<std::size_t>(i)] = w * (col[i] - c);
        weighted[static_cast<std::size_t>(i)] = w * (tau[i] - mt);
      }
      double trimmed_stat = scale * trimmed_sum(products, plan.k, scratch);
      double mult_stat = pairwise_sum(weighted) / root_n;
      sup = std::max(sup, std::abs(trimmed_stat - mult_stat));
    }
    rep.worst_slack = std::min(rep.worst_slack, bound - sup);
    if (sup > bound * (1.0 + kRelSlack)) ++rep.violations;
  }
  finalize_frequency(rep, 2.0 / nn);
  return rep;
}

LemmaReport check_counting_lemma(const DistributionSpec& spec, std::int64_t n,
                                 double p, double m_level, std::int64_t r_draws,
                                 RngStream stream) {
  LemmaReport rep;
  rep.lemma_id = "counting";
  const Moments mom = analytic_moments(spec, p);
  const double rate = static_cast<double>(n) * std::pow(mom.nu_p / m_level, p);
  const double threshold =
      3.0 * std::log1p(static_cast<double>(spec.d)) + 7.0 * rate;
  const double paper_bound = 2.0 * std::exp(-rate);

  rep.instances_checked = r_draws;
  for (std::int64_t r = 0; r < r_draws; ++r) {
    SampleMatrix s = sample(spec, n, stream.split(static_cast<std::uint64_t>(r)));
    std::int64_t v = count_exceedances(s.values, m_level);
    double slack = threshold - static_cast<double>(v);
    rep.worst_slack = std::min(rep.worst_slack, slack);
    if (static_cast<double>(v) >= threshold) ++rep.violations;
  }
  finalize_frequency(rep, paper_bound);
  return rep;
}

LemmaReport check_boolean_counting(const Eigen::VectorXd& probs, std::int64_t n,
                                   std::int64_t r_draws, RngStream stream) {
  LemmaReport rep;
  rep.lemma_id = "boolean_counting";
  const std::int64_t d = probs.size();
  double rho = probs.maxCoeff();
  const double threshold = 3.0 * std::log1p(static_cast<double>(d)) +
                           7.0 * static_cast<double>(n) * rho;
  const double paper_bound = 2.0 * std::exp(-static_cast<double>(n) * rho);

  rep.instances_checked = r_draws;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d));
  for (std::int64_t r = 0; r < r_draws; ++r) {
    RngStream draw = stream.split(static_cast<std::uint64_t>(r));
    std::fill(counts.begin(), counts.end(), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < d; ++j) {
        if (draw.next_double() < probs[j]) ++counts[static_cast<std::size_t>(j)];
      }
    }
    std::int64_t worst = *std::max_element(counts.begin(), counts.end());
    rep.worst_slack = std::min(rep.worst_slack, threshold - static_cast<double>(worst));
    if (static_cast<double>(worst) >= threshold) ++rep.violations;
  }
  finalize_frequency(rep, paper_bound);
  return rep;
}

LemmaReport check_conditional_counting(const DistributionSpec& spec,
                                       std::int64_t n, double m_level,
                                       std::int64_t t_budget,
                                       std::int64_t r_draws, RngStream stream) {
  LemmaReport rep;
  rep.lemma_id = "conditional_counting";
  SampleMatrix data = sample(spec, n, stream.split(0));
  if (count_exceedances(data.values, m_level) > t_budget) {
    rep.skipped = 1;
    rep.note = "conditioning sample exceeded the budget; instance skipped";
    return rep;
  }
  const std::int64_t d = spec.d;
  const double threshold = 3.0 * std::log1p(static_cast<double>(d)) +
                           7.0 * static_cast<double>(t_budget);
  const double paper_bound = 2.0 * std::exp(-static_cast<double>(t_budget));

  // Exceedance indicators of the conditioning sample.
  std::vector<std::uint8_t> exceed(static_cast<std::size_t>(n * d));
  for (std::int64_t j = 0; j < d; ++j) {
    for (std::int64_t i = 0; i < n; ++i) {
      exceed[static_cast<std::size_t>(j * n + i)] =
          std::abs(data.values(i, j)) > m_level ? 1 : 0;
    }
  }

  RngStream boot = stream.split(1);
  rep.instances_checked = r_draws;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d));
  for (std::int64_t r = 0; r < r_draws; ++r) {
    RngStream draw = boot.split(static_cast<std::uint64_t>(r));
    std::fill(counts.begin(), counts.end(), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t pick = static_cast<std::int64_t>(
          draw.next_below(static_cast<std::uint64_t>(n)));
      for (std::int64_t j = 0; j < d; ++j) {
        counts[static_cast<std::size_t>(j)] +=
            exceed[static_cast<std::size_t>(j * n + pick)];
      }
    }
    std::int64_t worst = *std::max_element(counts.begin(), counts.end());
    rep.worst_slack = std::min(rep.worst_slack, threshold - static_cast<double>(worst));
    if (static_cast<double>(worst) >= threshold) ++rep.violations;
  }
  finalize_frequency(rep, paper_bound);
  return rep;
}

LemmaReport check_covariance_bound(const DistributionSpec& spec, double p,
                                   double m_level) {
  if (spec.family == Family::GaussianEquicorrelated && spec.param != 0.0) {
    throw Error("covariance bound check needs a diagonal covariance family");
  }
  LemmaReport rep;
  rep.lemma_id = "covariance_bound";
  rep.instances_checked = 1;

  const Moments mom = analytic_moments(spec, p);
  const double var_std = standard_variance(spec);
  double delta = 0.0;
  for (std::int64_t j = 0; j < spec.d; ++j) {
    double s = spec.scale_at(j);
    double e2, e1;
    standard_truncated_moments(spec, m_level / s, &e2, &e1);
    double var_tau = s * s * (e2 - e1 * e1);
    delta = std::max(delta, std::abs(s * s * var_std - var_tau));
  }
  const double bound =
      4.0 * std::pow(mom.nu_p, p) * std::pow(m_level, 2.0 - p);
  rep.observed = delta;
  rep.bound = bound;
  rep.worst_slack = bound - delta;
  if (delta > bound * (1.0 + kRelSlack)) ++rep.violations;
  rep.passed = rep.violations == 0;
  return rep;
}

LemmaReport check_gaussian_comparison(const Eigen::MatrixXd& sigma1,
                                      const Eigen::MatrixXd& sigma2,
                                      std::int64_t r_draws, RngStream stream) {
  LemmaReport rep;
  rep.lemma_id = "gaussian_comparison";
  rep.instances_checked = 1;
  const std::int64_t d = sigma1.rows();

  Eigen::MatrixXd mid = 0.5 * (sigma1 + sigma2);
  CovarianceModel m1 = cholesky_with_jitter(sigma1);
  CovarianceModel m2 = cholesky_with_jitter(sigma2);
  CovarianceModel mm = cholesky_with_jitter(mid);

  auto draws1 = gaussian_sup_draws(m1, r_draws, stream.split(0));
  auto draws2 = gaussian_sup_draws(m2, r_draws, stream.split(1));
  auto draws1b = gaussian_sup_draws(m1, r_draws, stream.split(2));
  auto drawsm = gaussian_sup_draws(mm, r_draws, stream.split(3));

  double ks_full = two_sample_ks(draws1, draws2);
  double ks_half = two_sample_ks(draws1b, drawsm);

  double delta_full = (sigma1 - sigma2).cwiseAbs().maxCoeff();
  double delta_half = (sigma1 - mid).cwiseAbs().maxCoeff();
  double noise = std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(r_draws)));

  rep.observed = ks_half - ks_full;
  rep.bound = 2.0 * noise;
  rep.worst_slack = rep.bound - rep.observed;
  if (rep.observed > rep.bound) ++rep.violations;
  rep.passed = rep.violations == 0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "ks_full=%.4f ks_half=%.4f ref_full=%.4f ref_half=%.4f",
                ks_full, ks_half,
                std::log(static_cast<double>(d)) * std::sqrt(delta_full),
                std::log(static_cast<double>(d)) * std::sqrt(delta_half));
  rep.note = buf;
  return rep;
}

}  // namespace trimclt
