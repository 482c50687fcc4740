#include "kselect/variance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kselect {

ReductionCurve reduction_curve(const SSEProfile& profile) {
  if (profile.k_min != 1)
    throw std::invalid_argument("reduction_curve requires a profile starting at k_min = 1");
  if (profile.k_max < 2)
    throw std::invalid_argument("reduction_curve requires k_max >= 2");

  ReductionCurve curve;
  const auto n = static_cast<double>(profile.n);
  // Running minimum over j < k of (j/(N-j)) * SSE_j.
  double best_seen = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= profile.k_max; ++k) {
    const auto j = static_cast<double>(k - 1);
    const double candidate = profile.sse_at(k - 1) * j / (n - j);
    if (candidate < best_seen) best_seen = candidate;
    const double sse_hat = (n - static_cast<double>(k)) / static_cast<double>(k) * best_seen;
    if (sse_hat <= 0.0) {
      curve.unstable = true;
      curve.note = "curve truncated at k=" + std::to_string(k) +
                   " (expected SSE reached 0)";
      break;
    }
    curve.sse_hat[k] = sse_hat;
    curve.ratio[k] = std::sqrt(profile.sse_at(k) / sse_hat);
  }
  if (curve.ratio.empty())
    throw std::invalid_argument("reduction curve is empty (SSE_1 = 0)");
  return curve;
}

namespace {

CriterionResult reduction_base(const ReductionCurve& curve, const char* name) {
  CriterionResult result;
  result.name = name;
  result.scores = curve.ratio;
  result.unstable = curve.unstable;
  result.note = curve.note;
  return result;
}

}  // namespace

CriterionResult select_max_reduction(const ReductionCurve& curve) {
  CriterionResult result = reduction_base(curve, "max_reduction");
  const int best = argmin_score(curve.ratio);
  if (curve.ratio.at(best) >= curve.threshold) {
    result.selected_k = 1;
    result.unclustered = true;
    result.note = "no ratio below the threshold; no better-than-chance structure";
  } else {
    result.selected_k = best;
  }
  return result;
}

CriterionResult select_last_reduction(const ReductionCurve& curve) {
  CriterionResult result = reduction_base(curve, "last_reduction");
  int last = 0;
  for (const auto& [k, ratio] : curve.ratio)
    if (ratio < curve.threshold) last = k;
  if (last == 0) {
    result.selected_k = 1;
    result.unclustered = true;
    result.note = "no ratio below the threshold; no better-than-chance structure";
  } else {
    result.selected_k = last;
  }
  return result;
}

CriterionResult vrc(const SSEProfile& profile) {
  if (profile.k_min != 1)
    throw std::invalid_argument("vrc requires a profile starting at k_min = 1");
  if (profile.k_max < 2) throw std::invalid_argument("vrc requires k_max >= 2");

  CriterionResult result;
  result.name = "vrc";
  const auto n = static_cast<double>(profile.n);
  const double sse_1 = profile.sse_at(1);
  for (int k = 2; k <= profile.k_max; ++k) {
    const double sse_k = profile.sse_at(k);
    if (sse_k == 0.0) {
      result.unstable = true;
      result.note = "curve truncated at k=" + std::to_string(k) + " (zero SSE)";
      break;
    }
    if (static_cast<double>(k) >= n) break;  // df exhausted
    const double between = (sse_1 - sse_k) / static_cast<double>(k - 1);
    const double within = sse_k / (n - static_cast<double>(k));
    result.scores[k] = between / within;
  }
  if (result.scores.empty())
    throw std::invalid_argument("vrc has no usable points");
  result.selected_k = argmax_score(result.scores);
  if (result.scores.at(result.selected_k) <= 0.0) {
    // No variance explained at any k: flat SSE curve.
    result.unclustered = true;
    result.note = "no between-cluster variance at any k";
  }
  return result;
}

namespace {

// Pooled within-cluster scatter matrix (d x d, row-major) for the given
// assignment: sum over clusters of sum_{x in c} (x - mean_c)(x - mean_c)^T.
std::vector<double> within_scatter(const Dataset& dataset,
                                   std::span<const std::int32_t> assignment,
                                   int k) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  std::vector<double> means(static_cast<std::size_t>(k) * d, 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(assignment[i]);
    const auto p = dataset.point(i);
    for (std::size_t j = 0; j < d; ++j) means[c * d + j] += p[j];
    ++counts[c];
  }
  for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
    if (counts[c] > 0)
      for (std::size_t j = 0; j < d; ++j)
        means[c * d + j] /= static_cast<double>(counts[c]);

  std::vector<double> scatter(d * d, 0.0);
  std::vector<double> centered(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(assignment[i]);
    const auto p = dataset.point(i);
    for (std::size_t j = 0; j < d; ++j) centered[j] = p[j] - means[c * d + j];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s)
        scatter[r * d + s] += centered[r] * centered[s];
  }
  return scatter;
}

// log(det(M)) of a positive-semidefinite matrix via LU with partial
// pivoting; returns -infinity for singular matrices. A negative determinant
// can only arise from roundoff; its magnitude is treated as ~0.
double log_determinant(std::vector<double> m, std::size_t d) {
  double log_det = 0.0;
  double sign = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < d; ++row)
      if (std::abs(m[row * d + col]) > std::abs(m[pivot * d + col])) pivot = row;
    if (m[pivot * d + col] == 0.0)
      return -std::numeric_limits<double>::infinity();
    if (pivot != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(m[pivot * d + j], m[col * d + j]);
      sign = -sign;
    }
    const double diag = m[col * d + col];
    if (diag < 0.0) sign = -sign;
    log_det += std::log(std::abs(diag));
    for (std::size_t row = col + 1; row < d; ++row) {
      const double factor = m[row * d + col] / diag;
      for (std::size_t j = col; j < d; ++j) m[row * d + j] -= factor * m[col * d + j];
    }
  }
  if (sign < 0.0) return -std::numeric_limits<double>::infinity();
  return log_det;
}

}  // namespace

CriterionResult marriott(const Dataset& dataset, const SSEProfile& profile) {
  if (!profile.has_assignments)
    throw std::invalid_argument("marriott requires a profile with assignments");
  if (profile.n != dataset.size() || profile.d != dataset.dim())
    throw std::invalid_argument("profile does not match the dataset shape");
  if (profile.k_max < 2)
    throw std::invalid_argument("marriott requires k_max >= 2");

  const std::size_t d = dataset.dim();
  // Unclustered baseline: total scatter about the global mean.
  std::vector<std::int32_t> all_one(dataset.size(), 0);
  const double log_w1 = log_determinant(within_scatter(dataset, all_one, 1), d);
  if (!std::isfinite(log_w1))
    throw std::invalid_argument("zero generalized variance (degenerate data)");

  CriterionResult result;
  result.name = "marriott";
  double best_log = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (const ProfileEntry& entry : profile.entries) {
    if (entry.k < 2) continue;
    if (entry.solution.assignment.size() != dataset.size())
      throw std::invalid_argument("profile entry lacks a full assignment vector");
    const double log_wk =
        log_determinant(within_scatter(dataset, entry.solution.assignment, entry.k), d);
    // M_k = k^2 |W_k|; compare in log space.
    const double log_m = 2.0 * std::log(static_cast<double>(entry.k)) + log_wk;
    result.scores[entry.k] = std::exp(log_m);
    if (log_m < best_log) {
      best_log = log_m;
      best_k = entry.k;
    }
  }
  if (best_k == 0) throw std::invalid_argument("marriott has no usable points");
  result.selected_k = best_k;
  if (best_log >= log_w1) {
    result.unclustered = true;
    result.note = "no k improves on the unclustered generalized variance";
  }
  return result;
}

CriterionResult krzanowski_lai(const SSEProfile& profile) {
  if (profile.k_min != 1)
    throw std::invalid_argument("krzanowski_lai requires a profile starting at k_min = 1");
  if (profile.k_max < 3)
    throw std::invalid_argument("krzanowski_lai requires k_max >= 3");

  const double exponent = 2.0 / static_cast<double>(profile.d);
  // Diff_k defined for k in [2, k_max].
  auto diff = [&](int k) {
    return std::pow(static_cast<double>(k - 1), exponent) * profile.sse_at(k - 1) -
           std::pow(static_cast<double>(k), exponent) * profile.sse_at(k);
  };

  CriterionResult result;
  result.name = "kl_index";
  for (int k = 2; k <= profile.k_max - 1; ++k) {
    const double next = diff(k + 1);
    if (next == 0.0) {
      result.unstable = true;
      result.note = "k with zero Diff_{k+1} skipped";
      continue;
    }
    result.scores[k] = std::abs(diff(k) / next);
  }
  if (result.scores.empty()) {
    // Every ratio was 0/0 (e.g. SSE decaying exactly as k^{-2/d}).
    result.selected_k = profile.k_min;
    result.unstable = true;
    result.note = "all KL ratios undefined (zero differences)";
    return result;
  }
  result.selected_k = argmax_score(result.scores);
  return result;
}

CriterionResult pham(const SSEProfile& profile, double threshold) {
  if (profile.k_min != 1)
    throw std::invalid_argument("pham requires a profile starting at k_min = 1");
  if (profile.k_max < 2) throw std::invalid_argument("pham requires k_max >= 2");

  CriterionResult result;
  result.name = "pham";
  double alpha = 1.0 - 3.0 / (4.0 * static_cast<double>(profile.d));
  for (int k = 2; k <= profile.k_max; ++k) {
    if (k > 2) alpha = (5.0 / 6.0) * alpha + 1.0 / 6.0;
    const double previous = profile.sse_at(k - 1);
    if (previous == 0.0) {
      result.unstable = true;
      result.note = "curve truncated at k=" + std::to_string(k) +
                    " (zero SSE at k-1)";
      break;
    }
    result.scores[k] = profile.sse_at(k) / (alpha * previous);
  }
  if (result.scores.empty())
    throw std::invalid_argument("pham has no usable points (SSE_1 = 0)");
  result.selected_k = argmin_score(result.scores);
  if (result.scores.at(result.selected_k) >= threshold) {
    result.unclustered = true;
    result.note = "no k beats the expected uniform-data change";
  }
  return result;
}

}  // namespace kselect
