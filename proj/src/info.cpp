#include "kselect/info.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kselect {

BicScore bic_scores(const SSEProfile& profile, BicVariant variant,
                    bool aic_penalty) {
  if (!profile.has_assignments)
    throw std::invalid_argument("bic requires a profile with assignments");

  BicScore scores;
  scores.variant = variant;
  scores.aic_penalty = aic_penalty;

  const auto n = static_cast<double>(profile.n);
  const auto d = static_cast<double>(profile.d);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  for (const ProfileEntry& entry : profile.entries) {
    const auto k = static_cast<double>(entry.k);
    if (static_cast<std::size_t>(entry.k) >= profile.n) break;  // no df left

    if (entry.solution.assignment.size() != profile.n)
      throw std::invalid_argument("profile entry lacks a full assignment vector");
    // Cluster sizes; empty clusters contribute nothing (R_i log R_i -> 0).
    std::vector<std::size_t> counts(static_cast<std::size_t>(entry.k), 0);
    for (const std::int32_t a : entry.solution.assignment)
      ++counts[static_cast<std::size_t>(a)];
    double size_terms = 0.0;  // sum_i R_i log R_i
    for (const std::size_t count : counts)
      if (count > 0)
        size_terms += static_cast<double>(count) * std::log(static_cast<double>(count));

    // Free parameters of the k-cluster spherical mixture: k-1 mixture
    // weights, k*d center coordinates, one shared variance.
    const double p = (k - 1.0) + d * k + 1.0;
    const double penalty =
        aic_penalty ? p : (p / 2.0) * std::log(n);

    double log_likelihood;
    if (entry.sse == 0.0) {
      // Perfect fit: the likelihood diverges. Score it +infinity (selected),
      // then cut the curve — later k are not comparable.
      log_likelihood = std::numeric_limits<double>::infinity();
      scores.log_likelihood[entry.k] = log_likelihood;
      scores.penalty[entry.k] = penalty;
      scores.bic[entry.k] = log_likelihood;
      scores.unstable = true;
      scores.note = "curve truncated after k=" + std::to_string(entry.k) +
                    " (zero SSE, infinite likelihood)";
      break;
    }

    if (variant == BicVariant::original) {
      // X-means as printed (Pelleg & Moore), per-cluster terms summed over
      // all clusters:
      //   sigma^2            = SSE / (N - K)
      //   -(R/2) log(2 pi)   from the normalization constant
      //   -(R d / 2) log s2  from the exponent scale
      //   -(R - K^2)/2       the summed -(R_i - K)/2 terms (K of them)
      //   sum R_i log R_i - R log R   the mixture weights
      const double sigma2 = entry.sse / (n - k);
      log_likelihood = -(n / 2.0) * std::log(two_pi) -
                       (n * d / 2.0) * std::log(sigma2) - (n - k * k) / 2.0 +
                       size_terms - n * std::log(n);
    } else {
      // Corrected spherical-Gaussian form (Foglia & Hancock):
      //   sigma^2 = SSE / (d (N - K))   (d-dimensional variance MLE)
      //   l = sum R_i log R_i - R log R
      //       - (R d / 2) log(2 pi sigma^2) - d (R - K) / 2
      const double sigma2 = entry.sse / (d * (n - k));
      log_likelihood = size_terms - n * std::log(n) -
                       (n * d / 2.0) * std::log(two_pi * sigma2) -
                       d * (n - k) / 2.0;
    }

    scores.log_likelihood[entry.k] = log_likelihood;
    scores.penalty[entry.k] = penalty;
    scores.bic[entry.k] = log_likelihood - penalty;
  }

  if (scores.bic.empty())
    throw std::invalid_argument("bic has no usable points (k range too large)");
  return scores;
}

CriterionResult bic(const SSEProfile& profile, BicVariant variant,
                    bool aic_penalty) {
  const BicScore scores = bic_scores(profile, variant, aic_penalty);
  CriterionResult result;
  if (aic_penalty)
    result.name = "aic";
  else
    result.name = variant == BicVariant::original ? "bic" : "bic_fixed";
  result.scores = scores.bic;
  result.unstable = scores.unstable;
  result.note = scores.note;
  result.selected_k = argmax_score(result.scores);
  return result;
}

}  // namespace kselect
