#pragma once

#include <map>

#include "kselect/criteria.hpp"
#include "kselect/profile.hpp"

namespace kselect {

enum class BicVariant {
  // BIC exactly as printed in the X-means description (Pelleg & Moore); its
  // summed per-cluster form carries a -(N - K^2)/2 term that rewards large K,
  // which is the documented overfitting behavior of this variant.
  original,
  // Corrected spherical-Gaussian form (Foglia & Hancock).
  fixed,
};

// Per-k decomposition of the information criterion.
struct BicScore {
  std::map<int, double> log_likelihood;
  std::map<int, double> penalty;  // (p/2) log N, or p for the AIC penalty
  std::map<int, double> bic;      // log_likelihood - penalty
  BicVariant variant = BicVariant::fixed;
  bool aic_penalty = false;
  bool unstable = false;
  std::string note;
};

// Computes the spherical shared-variance Gaussian likelihood of each profile
// entry from its SSE and cluster sizes (assignments required), penalized
// with p = (k-1) + d*k + 1 free parameters:
//   variant original: sigma^2 = SSE/(N-k)
//   variant fixed:    sigma^2 = SSE/(d*(N-k))
// aic_penalty swaps the (p/2) log N penalty for plain p.
// A zero SSE makes the likelihood diverge: that k scores +infinity (it is a
// perfect fit and gets selected), the curve is truncated after it and the
// unstable flag is set.
BicScore bic_scores(const SSEProfile& profile, BicVariant variant,
                    bool aic_penalty = false);

// Selection: argmax of the penalized score.
CriterionResult bic(const SSEProfile& profile, BicVariant variant,
                    bool aic_penalty = false);

}  // namespace kselect
