#pragma once

#include <optional>

#include "kselect/criteria.hpp"
#include "kselect/profile.hpp"

namespace kselect {

// Elbow-detection heuristics. Each consumes only the SSE sequence of the
// profile (assignments are never read) and returns a score curve plus the
// selected k; ties always go to the lowest k.

// Jump method: J_k = SSE_k^{-Y} - SSE_{k-1}^{-Y} with SSE_0^{-Y} := 0 so that
// k = 1 is selectable; Y defaults to d/2. Selection: argmax. A zero SSE
// inside the range truncates the curve there (infinite transform) and sets
// the unstable flag. Requires k_min = 1.
CriterionResult jump(const SSEProfile& profile,
                     std::optional<double> power = std::nullopt);

// L-method: for every interior split c, fit least-squares lines to the
// points at k <= c and k >= c (the split point is shared); the score is the
// size-weighted total RMSE and the selected k is its argmin. The iterative
// variant repeatedly truncates the range to k <= 2 * selection until the
// selection stops moving (never below 4 points). Requires >= 4 points.
CriterionResult l_method(const SSEProfile& profile, bool iterative = false);

// Kneedle: smooth the curve with a centered 3-point moving average
// (endpoints kept), min-max normalize x and y to [0,1], form the difference
// curve delta_k = (1 - y_k) - x_k, and pick the last local maximum of delta
// that is confirmed by the curve dropping below its sensitivity threshold
// (offline rule; falls back to the global argmax when nothing confirms).
// Flat profiles select k_min with the unclustered flag. Requires >= 3 points.
CriterionResult kneedle(const SSEProfile& profile, double sensitivity = 1.0);

// Curvature index: (SSE_{k-1} - SSE_k) / (SSE_k - SSE_{k+1}) - 1 at interior
// k; zero denominators are skipped with the unstable flag (error when all
// are); selection: argmax, and an exact tie for the top also flags unstable.
CriterionResult zhang_curvature(const SSEProfile& profile);

// Elbow length: absolute point-to-chord distance from (k, SSE_k) to the
// straight line through (k_min, SSE_{k_min}) and (k_max, SSE_{k_max});
// selection: argmax. Note: not invariant under axis scaling by design.
// Requires >= 3 points.
CriterionResult pyclustering_elbow(const SSEProfile& profile);

// Angle method: SSE min-max scaled to [0,10] with x in index units (spacing
// 1); at each interior k the angle (degrees) between the segments to both
// neighbors; selection: argmin (sharpest bend). A bend-free curve (all
// angles 180°, e.g. linear or flat profiles) selects the lowest interior k
// with the unclustered flag. Requires >= 3 points.
CriterionResult shi_angles(const SSEProfile& profile);

// AutoElbow: with x and y min-max scaled to [0,1],
// f_k = ((x_k-1)^2 + (y_k-1)^2) / (x_k^2 + 2*y_k^2); selection: argmax.
// Requires >= 3 points and a non-flat profile.
CriterionResult auto_elbow(const SSEProfile& profile);

}  // namespace kselect
