#pragma once

#include <map>

#include "kselect/criteria.hpp"
#include "kselect/dataset.hpp"
#include "kselect/profile.hpp"

namespace kselect {

// Expected-reduction normalization of the SSE curve: for k >= 2,
//
//   sse_hat_k = ((N-k)/k) * min_{j<k} (j/(N-j)) * SSE_j
//   ratio_k   = sqrt(SSE_k / sse_hat_k)
//
// A ratio below 1 means k-means reduced the deviation more than splitting
// unclustered data into k parts would be expected to.
struct ReductionCurve {
  std::map<int, double> sse_hat;
  std::map<int, double> ratio;
  double threshold = 1.0;
  // Set when the curve was truncated because sse_hat reached 0 (exact fits).
  bool unstable = false;
  std::string note;
};

// Requires k_min = 1 (SSE_1 feeds the estimate) and k_max >= 2.
ReductionCurve reduction_curve(const SSEProfile& profile);

// Selection rules over the reduction curve: the k with the smallest ratio,
// or the largest k with ratio < threshold. If no ratio clears the threshold
// the data is reported unclustered with k = 1.
CriterionResult select_max_reduction(const ReductionCurve& curve);
CriterionResult select_last_reduction(const ReductionCurve& curve);

// Variance ratio criterion ((SSE_1-SSE_k)/(k-1)) / (SSE_k/(N-k)), argmax
// over k >= 2; zero SSE truncates the curve. An all-zero curve (no variance
// explained) selects k=2 with the unclustered flag. Requires k_min = 1.
CriterionResult vrc(const SSEProfile& profile);

// Marriott's generalized-variance criterion M_k = k^2 * |W_k| with W_k the
// pooled within-cluster scatter matrix; argmin over k >= 2 (computed from
// the retained assignments). The unclustered flag is set when even the best
// M_k fails to beat the unclustered baseline |W_1| (computed from the data).
// Internally works with log-determinants to dodge under/overflow.
CriterionResult marriott(const Dataset& dataset, const SSEProfile& profile);

// Krzanowski-Lai index: Diff_k = (k-1)^{2/d} SSE_{k-1} - k^{2/d} SSE_k,
// KL(k) = |Diff_k / Diff_{k+1}|, argmax; k with Diff_{k+1} = 0 are skipped
// with the unstable flag. Requires k_min = 1 and k_max >= 3.
CriterionResult krzanowski_lai(const SSEProfile& profile);

// Pham-Dimov-Nguyen score f(k) = SSE_k / (alpha_k * SSE_{k-1}) with
// alpha_2 = 1 - 3/(4d), alpha_k = (5/6) alpha_{k-1} + 1/6; argmin over
// k >= 2; the unclustered flag is set when min f(k) >= threshold (no k beats
// the expected uniform-data change). Requires k_min = 1.
CriterionResult pham(const SSEProfile& profile, double threshold = 1.0);

}  // namespace kselect
