#include "kselect/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "kselect/rng.hpp"

namespace kselect {

PairwiseDistanceView::PairwiseDistanceView(const Dataset& dataset)
    : dataset_(&dataset), n_(dataset.size()) {}

double PairwiseDistanceView::compute(std::size_t i, std::size_t j) const {
  const auto a = dataset_->point(i);
  const auto b = dataset_->point(j);
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

PairwiseDistanceView PairwiseDistanceView::materialized(const Dataset& dataset) {
  if (dataset.size() > kMaterializeLimit)
    throw std::invalid_argument(
        "dataset too large to materialize pairwise distances; use on_demand");
  PairwiseDistanceView view(dataset);
  view.matrix_.resize(view.n_ * view.n_);
  for (std::size_t i = 0; i < view.n_; ++i) {
    view.matrix_[i * view.n_ + i] = 0.0;
    for (std::size_t j = i + 1; j < view.n_; ++j) {
      const double dist = view.compute(i, j);
      view.matrix_[i * view.n_ + j] = dist;
      view.matrix_[j * view.n_ + i] = dist;
    }
  }
  return view;
}

PairwiseDistanceView PairwiseDistanceView::on_demand(const Dataset& dataset) {
  return PairwiseDistanceView(dataset);
}

namespace {

// Cluster sizes; k inferred as max index + 1 when not supplied.
std::vector<std::size_t> cluster_counts(std::span<const std::int32_t> assignment,
                                        std::size_t k) {
  std::vector<std::size_t> counts(k, 0);
  for (const std::int32_t a : assignment) {
    if (a < 0 || static_cast<std::size_t>(a) >= k)
      throw std::invalid_argument("assignment index out of range");
    ++counts[static_cast<std::size_t>(a)];
  }
  return counts;
}

std::size_t infer_k(std::span<const std::int32_t> assignment) {
  std::int32_t max_index = -1;
  for (const std::int32_t a : assignment) max_index = std::max(max_index, a);
  if (max_index < 0) throw std::invalid_argument("empty assignment");
  return static_cast<std::size_t>(max_index) + 1;
}

}  // namespace

double dunn(const Dataset& dataset, std::span<const std::int32_t> assignment,
            const PairwiseDistanceView* view) {
  if (assignment.size() != dataset.size())
    throw std::invalid_argument("assignment size does not match dataset");
  const std::size_t k = infer_k(assignment);
  const auto counts = cluster_counts(assignment, k);
  std::size_t nonempty = 0;
  for (const std::size_t count : counts)
    if (count > 0) ++nonempty;
  if (nonempty < 2)
    throw std::invalid_argument("dunn requires at least 2 nonempty clusters");

  PairwiseDistanceView local = PairwiseDistanceView::on_demand(dataset);
  const PairwiseDistanceView& distances = view ? *view : local;

  double min_between = std::numeric_limits<double>::infinity();
  double max_diameter = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    for (std::size_t j = i + 1; j < dataset.size(); ++j) {
      const double dist = distances(i, j);
      if (assignment[i] == assignment[j])
        max_diameter = std::max(max_diameter, dist);
      else
        min_between = std::min(min_between, dist);
    }
  if (max_diameter == 0.0)
    throw std::invalid_argument("undefined diameter (all clusters are singletons)");
  return min_between / max_diameter;
}

double davies_bouldin(const Dataset& dataset,
                      std::span<const std::int32_t> assignment,
                      std::span<const double> centers) {
  const std::size_t d = dataset.dim();
  if (assignment.size() != dataset.size())
    throw std::invalid_argument("assignment size does not match dataset");
  if (centers.empty() || centers.size() % d != 0)
    throw std::invalid_argument("centers do not match dataset dimensionality");
  const std::size_t k = centers.size() / d;
  const auto counts = cluster_counts(assignment, k);

  // RMS radius per nonempty cluster.
  std::vector<double> radius(k, 0.0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto p = dataset.point(i);
    const double* c = centers.data() + static_cast<std::size_t>(assignment[i]) * d;
    double dist2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = p[j] - c[j];
      dist2 += diff * diff;
    }
    radius[static_cast<std::size_t>(assignment[i])] += dist2;
  }
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < k; ++c)
    if (counts[c] > 0) {
      radius[c] = std::sqrt(radius[c] / static_cast<double>(counts[c]));
      live.push_back(c);
    }
  if (live.size() < 2)
    throw std::invalid_argument("davies_bouldin requires at least 2 nonempty clusters");

  double total = 0.0;
  for (const std::size_t i : live) {
    double worst = 0.0;
    for (const std::size_t j : live) {
      if (i == j) continue;
      double m2 = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = centers[i * d + c] - centers[j * d + c];
        m2 += diff * diff;
      }
      if (m2 == 0.0)
        throw std::invalid_argument("coincident centers make davies_bouldin undefined");
      worst = std::max(worst, (radius[i] + radius[j]) / std::sqrt(m2));
    }
    total += worst;
  }
  return total / static_cast<double>(live.size());
}

double silhouette(const Dataset& dataset,
                  std::span<const std::int32_t> assignment,
                  const PairwiseDistanceView* view) {
  const std::size_t n = dataset.size();
  if (assignment.size() != n)
    throw std::invalid_argument("assignment size does not match dataset");
  const std::size_t k = infer_k(assignment);
  const auto counts = cluster_counts(assignment, k);
  std::size_t nonempty = 0;
  for (const std::size_t count : counts)
    if (count > 0) ++nonempty;
  if (nonempty < 2)
    throw std::invalid_argument("silhouette requires at least 2 nonempty clusters");

  PairwiseDistanceView local = PairwiseDistanceView::on_demand(dataset);
  const PairwiseDistanceView& distances = view ? *view : local;

  double total = 0.0;
  std::vector<double> sum_to(k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = static_cast<std::size_t>(assignment[i]);
    if (counts[own] == 1) continue;  // singleton: s = 0
    std::fill(sum_to.begin(), sum_to.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum_to[static_cast<std::size_t>(assignment[j])] += distances(i, j);
    }
    const double a = sum_to[own] / static_cast<double>(counts[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own || counts[c] == 0) continue;
      b = std::min(b, sum_to[c] / static_cast<double>(counts[c]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double simplified_silhouette(const Dataset& dataset,
                             std::span<const std::int32_t> assignment,
                             std::span<const double> centers) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  if (assignment.size() != n)
    throw std::invalid_argument("assignment size does not match dataset");
  if (centers.empty() || centers.size() % d != 0)
    throw std::invalid_argument("centers do not match dataset dimensionality");
  const std::size_t k = centers.size() / d;
  const auto counts = cluster_counts(assignment, k);
  std::size_t nonempty = 0;
  for (const std::size_t count : counts)
    if (count > 0) ++nonempty;
  if (nonempty < 2)
    throw std::invalid_argument(
        "simplified_silhouette requires at least 2 nonempty clusters");

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = dataset.point(i);
    const auto own = static_cast<std::size_t>(assignment[i]);
    double a = 0.0;
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      double dist2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = p[j] - centers[c * d + j];
        dist2 += diff * diff;
      }
      const double dist = std::sqrt(dist2);
      if (c == own)
        a = dist;
      else
        b = std::min(b, dist);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

namespace {

const char* index_name(DistanceIndex which) {
  switch (which) {
    case DistanceIndex::dunn: return "dunn";
    case DistanceIndex::davies_bouldin: return "db";
    case DistanceIndex::silhouette: return "silhouette";
    case DistanceIndex::simplified_silhouette: return "simplified_silhouette";
  }
  throw std::invalid_argument("invalid distance index");
}

}  // namespace

CriterionResult sweep_distance_criterion(const Dataset& dataset,
                                         const SSEProfile& profile,
                                         DistanceIndex which,
                                         const DistanceSweepOptions& options) {
  if (!profile.has_assignments)
    throw std::invalid_argument("distance criteria require a profile with assignments");
  if (profile.n != dataset.size() || profile.d != dataset.dim())
    throw std::invalid_argument("profile does not match the dataset shape");

  CriterionResult result;
  result.name = index_name(which);

  // The O(n^2) guard: subsample once (seeded, sorted index order) and reuse
  // the same point subset at every k.
  const Dataset* data = &dataset;
  std::vector<std::size_t> kept;
  std::optional<Dataset> subsampled;
  if (dataset.size() > options.max_n) {
    if (!options.allow_subsample)
      throw std::invalid_argument(
          "dataset exceeds max_n for distance criteria; enable subsampling");
    Rng rng(options.subsample_seed);
    std::vector<std::size_t> indices(dataset.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    for (std::size_t i = 0; i < options.max_n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(indices.size() - i));
      std::swap(indices[i], indices[j]);
    }
    kept.assign(indices.begin(), indices.begin() + static_cast<long>(options.max_n));
    std::sort(kept.begin(), kept.end());
    std::vector<double> coords;
    coords.reserve(kept.size() * dataset.dim());
    for (const std::size_t i : kept) {
      const auto p = dataset.point(i);
      coords.insert(coords.end(), p.begin(), p.end());
    }
    subsampled.emplace(std::move(coords), kept.size(), dataset.dim());
    data = &*subsampled;
    result.unstable = true;
    result.note = "evaluated on a seeded subsample of " +
                  std::to_string(kept.size()) + " points";
  }

  const bool needs_pairwise =
      which == DistanceIndex::dunn || which == DistanceIndex::silhouette;
  std::optional<PairwiseDistanceView> view;
  if (needs_pairwise && data->size() <= 2048)
    view = PairwiseDistanceView::materialized(*data);
  else if (needs_pairwise)
    view = PairwiseDistanceView::on_demand(*data);

  std::string skip_note;
  std::vector<std::int32_t> sub_assignment;
  for (const ProfileEntry& entry : profile.entries) {
    if (entry.k < 2) continue;
    std::span<const std::int32_t> assignment = entry.solution.assignment;
    if (!kept.empty()) {
      sub_assignment.clear();
      for (const std::size_t i : kept)
        sub_assignment.push_back(entry.solution.assignment[i]);
      assignment = sub_assignment;
    }
    try {
      double value = 0.0;
      switch (which) {
        case DistanceIndex::dunn:
          value = dunn(*data, assignment, view ? &*view : nullptr);
          break;
        case DistanceIndex::davies_bouldin:
          value = davies_bouldin(*data, assignment, entry.solution.centers);
          break;
        case DistanceIndex::silhouette:
          value = silhouette(*data, assignment, view ? &*view : nullptr);
          break;
        case DistanceIndex::simplified_silhouette:
          value = simplified_silhouette(*data, assignment, entry.solution.centers);
          break;
      }
      result.scores[entry.k] = value;
    } catch (const std::invalid_argument&) {
      skip_note = "degenerate clusterings skipped";
    }
  }
  if (result.scores.empty())
    throw std::invalid_argument(std::string(index_name(which)) +
                                " is undefined at every k in the profile");
  if (!skip_note.empty()) {
    result.unstable = true;
    result.note = result.note.empty() ? skip_note : result.note + "; " + skip_note;
  }

  result.selected_k = which == DistanceIndex::davies_bouldin
                          ? argmin_score(result.scores)
                          : argmax_score(result.scores);
  return result;
}

}  // namespace kselect
