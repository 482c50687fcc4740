#include "kselect/elbow.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kselect {

int argmax_score(const std::map<int, double>& scores) {
  if (scores.empty()) throw std::invalid_argument("empty score curve");
  auto best = scores.begin();
  for (auto it = std::next(scores.begin()); it != scores.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

int argmin_score(const std::map<int, double>& scores) {
  if (scores.empty()) throw std::invalid_argument("empty score curve");
  auto best = scores.begin();
  for (auto it = std::next(scores.begin()); it != scores.end(); ++it)
    if (it->second < best->second) best = it;
  return best->first;
}

CriterionResult jump(const SSEProfile& profile, std::optional<double> power) {
  if (profile.k_min != 1)
    throw std::invalid_argument("jump requires a profile starting at k_min = 1");
  const double y = power.value_or(static_cast<double>(profile.d) / 2.0);
  if (!(y > 0.0)) throw std::invalid_argument("jump power must be positive");

  CriterionResult result;
  result.name = "jump";
  double previous_transform = 0.0;  // SSE_0^{-Y} := 0
  for (const ProfileEntry& entry : profile.entries) {
    if (entry.sse == 0.0) {
      // The transform diverges; everything from here on is meaningless.
      result.unstable = true;
      result.note = "curve truncated at k=" + std::to_string(entry.k) +
                    " (zero SSE makes the transform infinite)";
      break;
    }
    const double transform = std::pow(entry.sse, -y);
    result.scores[entry.k] = transform - previous_transform;
    previous_transform = transform;
  }
  if (result.scores.empty())
    throw std::invalid_argument("jump has no usable points (SSE_1 = 0)");
  result.selected_k = argmax_score(result.scores);
  return result;
}

namespace {

// Least-squares line fit over profile points k in [lo, hi] (inclusive,
// indices into the entry array); returns the residual RMSE.
double line_fit_rmse(const SSEProfile& profile, std::size_t lo, std::size_t hi) {
  const auto m = static_cast<double>(hi - lo + 1);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double x = profile.entries[i].k;
    const double y = profile.entries[i].sse;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  double slope = 0.0, intercept = sy / m;
  if (denom != 0.0) {
    slope = (m * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / m;
  }
  double residual = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double x = profile.entries[i].k;
    const double y = profile.entries[i].sse;
    const double r = y - (intercept + slope * x);
    residual += r * r;
  }
  return std::sqrt(residual / m);
}

// One L-method pass over entry indices [0, hi]; returns (scores, best split
// index). The split point belongs to both segments.
std::pair<std::map<int, double>, std::size_t> l_method_pass(
    const SSEProfile& profile, std::size_t hi) {
  std::map<int, double> scores;
  std::size_t best_split = 1;
  double best_score = 0.0;
  // Both segments need >= 2 points: c in [1, hi-1].
  for (std::size_t c = 1; c <= hi - 1; ++c) {
    const auto left_size = static_cast<double>(c + 1);
    const auto right_size = static_cast<double>(hi - c + 1);
    const double left_rmse = line_fit_rmse(profile, 0, c);
    const double right_rmse = line_fit_rmse(profile, c, hi);
    const double total = (left_size * left_rmse + right_size * right_rmse) /
                         (left_size + right_size);
    const int k = profile.entries[c].k;
    scores[k] = total;
    if (scores.size() == 1 || total < best_score) {
      best_score = total;
      best_split = c;
    }
  }
  return {std::move(scores), best_split};
}

}  // namespace

CriterionResult l_method(const SSEProfile& profile, bool iterative) {
  const std::size_t count = profile.entries.size();
  if (count < 4)
    throw std::invalid_argument("l_method requires at least 4 profile points");

  CriterionResult result;
  result.name = iterative ? "l_method_iter" : "l_method";

  std::size_t hi = count - 1;
  auto [scores, split] = l_method_pass(profile, hi);
  if (iterative) {
    // Re-fit on the range truncated to the first 2 * selection values until
    // the selection stops moving; the range never grows and never drops
    // below 4 points, so this terminates.
    for (;;) {
      const int selected = profile.entries[split].k;
      const auto cutoff = static_cast<long>(2 * selected - profile.k_min);
      std::size_t new_hi = hi;
      if (cutoff >= 3 && static_cast<std::size_t>(cutoff) < hi)
        new_hi = static_cast<std::size_t>(cutoff);
      else if (cutoff < 3)
        new_hi = 3;
      if (new_hi >= hi) break;
      hi = new_hi;
      auto [new_scores, new_split] = l_method_pass(profile, hi);
      scores = std::move(new_scores);
      if (new_split == split) break;
      split = new_split;
    }
    if (hi != count - 1)
      result.note = "range truncated to k <= " + std::to_string(profile.entries[hi].k);
  }
  result.scores = std::move(scores);
  result.selected_k = profile.entries[split].k;
  return result;
}

CriterionResult kneedle(const SSEProfile& profile, double sensitivity) {
  const std::size_t count = profile.entries.size();
  if (count < 3)
    throw std::invalid_argument("kneedle requires at least 3 profile points");

  CriterionResult result;
  result.name = "kneedle";

  std::vector<double> y(count);
  for (std::size_t i = 0; i < count; ++i) y[i] = profile.entries[i].sse;

  // Centered moving average, window 3, endpoints unsmoothed.
  std::vector<double> smooth(count);
  smooth.front() = y.front();
  smooth.back() = y.back();
  for (std::size_t i = 1; i + 1 < count; ++i)
    smooth[i] = (y[i - 1] + y[i] + y[i + 1]) / 3.0;

  double y_min = smooth[0], y_max = smooth[0];
  for (const double v : smooth) {
    y_min = std::min(y_min, v);
    y_max = std::max(y_max, v);
  }
  if (y_max == y_min) {
    result.unclustered = true;
    result.note = "flat profile";
    result.selected_k = profile.k_min;
    return result;
  }

  // Normalized difference to the diagonal; for a decreasing convex curve the
  // knee is where this peaks.
  std::vector<double> delta(count);
  const auto span = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double xn = static_cast<double>(i) / span;
    const double yn = (smooth[i] - y_min) / (y_max - y_min);
    delta[i] = (1.0 - yn) - xn;
    result.scores[profile.entries[i].k] = delta[i];
  }

  // Offline selection: a local maximum counts as a knee when delta falls
  // below its threshold before the next local maximum; take the last one.
  const double threshold_offset = sensitivity / span;
  std::size_t chosen = count;
  for (std::size_t i = 1; i + 1 < count; ++i) {
    if (!(delta[i] > delta[i - 1] && delta[i] >= delta[i + 1])) continue;
    const double threshold = delta[i] - threshold_offset;
    for (std::size_t j = i + 1; j < count; ++j) {
      if (delta[j] > delta[i]) break;  // superseded before confirmation
      if (delta[j] < threshold) {
        chosen = i;
        break;
      }
    }
  }
  if (chosen == count) {
    // No confirmed knee; fall back to the strongest point of the curve.
    std::size_t best = 0;
    for (std::size_t i = 1; i < count; ++i)
      if (delta[i] > delta[best]) best = i;
    chosen = best;
  }
  result.selected_k = profile.entries[chosen].k;
  return result;
}

CriterionResult zhang_curvature(const SSEProfile& profile) {
  if (profile.entries.size() < 3)
    throw std::invalid_argument("zhang_curvature requires at least 3 profile points");

  CriterionResult result;
  result.name = "curvature";
  for (std::size_t i = 1; i + 1 < profile.entries.size(); ++i) {
    const double numerator = profile.entries[i - 1].sse - profile.entries[i].sse;
    const double denominator = profile.entries[i].sse - profile.entries[i + 1].sse;
    if (denominator == 0.0) {
      result.unstable = true;
      result.note = "zero denominator at k=" + std::to_string(profile.entries[i].k) +
                    " skipped";
      continue;
    }
    result.scores[profile.entries[i].k] = numerator / denominator - 1.0;
  }
  if (result.scores.empty())
    throw std::invalid_argument("zhang_curvature: all denominators are zero");
  result.selected_k = argmax_score(result.scores);

  int top_count = 0;
  for (const auto& [k, score] : result.scores)
    if (score == result.scores.at(result.selected_k)) ++top_count;
  if (top_count > 1) {
    result.unstable = true;
    if (result.note.empty()) result.note = "tie for the maximum score";
  }
  return result;
}

CriterionResult pyclustering_elbow(const SSEProfile& profile) {
  if (profile.entries.size() < 3)
    throw std::invalid_argument("pyclustering_elbow requires at least 3 profile points");

  CriterionResult result;
  result.name = "pyclustering";
  const double x0 = profile.k_min;
  const double y0 = profile.entries.front().sse;
  const double x1 = profile.k_max;
  const double y1 = profile.entries.back().sse;
  const double dy = y1 - y0;
  const double dx = x1 - x0;
  const double denominator = std::sqrt(dy * dy + dx * dx);
  for (const ProfileEntry& entry : profile.entries) {
    const double numerator =
        dy * static_cast<double>(entry.k) - dx * entry.sse + x1 * y0 - y1 * x0;
    result.scores[entry.k] = std::abs(numerator) / denominator;
  }
  result.selected_k = argmax_score(result.scores);
  return result;
}

CriterionResult shi_angles(const SSEProfile& profile) {
  const std::size_t count = profile.entries.size();
  if (count < 3)
    throw std::invalid_argument("shi_angles requires at least 3 profile points");

  CriterionResult result;
  result.name = "shi_angles";

  double y_min = profile.entries.front().sse;
  double y_max = y_min;
  for (const ProfileEntry& entry : profile.entries) {
    y_min = std::min(y_min, entry.sse);
    y_max = std::max(y_max, entry.sse);
  }
  // Min-max scale y to [0,10]; x stays in index units (spacing 1). A flat
  // profile scales to all zeros and lands in the no-bend case below.
  std::vector<double> ys(count, 0.0);
  if (y_max > y_min)
    for (std::size_t i = 0; i < count; ++i)
      ys[i] = 10.0 * (profile.entries[i].sse - y_min) / (y_max - y_min);

  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double left = ys[i - 1] - ys[i];
    const double right = ys[i + 1] - ys[i];
    const double dot = -1.0 * 1.0 + left * right;
    const double norm = std::sqrt(1.0 + left * left) * std::sqrt(1.0 + right * right);
    double cosine = dot / norm;
    cosine = std::max(-1.0, std::min(1.0, cosine));
    result.scores[profile.entries[i].k] =
        std::acos(cosine) * 180.0 / std::numbers::pi;
  }
  result.selected_k = argmin_score(result.scores);
  // Straight profiles should land here, but acos near -1 carries ~1e-6
  // degrees of roundoff, so the cutoff must be measurably below 180.
  if (result.scores.at(result.selected_k) >= 180.0 - 1e-4) {
    result.unclustered = true;
    result.note = "no bend in the profile (all angles 180 degrees)";
  }
  return result;
}

CriterionResult auto_elbow(const SSEProfile& profile) {
  const std::size_t count = profile.entries.size();
  if (count < 3)
    throw std::invalid_argument("auto_elbow requires at least 3 profile points");

  const double y_first = profile.entries.front().sse;
  double y_min = y_first, y_max = y_first;
  for (const ProfileEntry& entry : profile.entries) {
    y_min = std::min(y_min, entry.sse);
    y_max = std::max(y_max, entry.sse);
  }
  if (y_max == y_min)
    throw std::invalid_argument("auto_elbow is undefined on a flat profile");

  CriterionResult result;
  result.name = "auto_elbow";
  const auto x_span = static_cast<double>(profile.k_max - profile.k_min);
  for (const ProfileEntry& entry : profile.entries) {
    const double x = static_cast<double>(entry.k - profile.k_min) / x_span;
    const double y = (entry.sse - y_min) / (y_max - y_min);
    result.scores[entry.k] =
        ((x - 1.0) * (x - 1.0) + (y - 1.0) * (y - 1.0)) / (x * x + 2.0 * y * y);
  }
  result.selected_k = argmax_score(result.scores);
  return result;
}

}  // namespace kselect
