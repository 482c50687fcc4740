#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "kselect/criteria.hpp"
#include "kselect/dataset.hpp"
#include "kselect/profile.hpp"

namespace kselect {

// Euclidean point-to-point distances, either precomputed (n x n buffer) or
// computed on demand. Both modes evaluate the identical expression, so their
// values agree bitwise.
class PairwiseDistanceView {
 public:
  // Materialization is guarded: above this many points the n^2 buffer is
  // refused (use on_demand instead).
  static constexpr std::size_t kMaterializeLimit = 5000;

  static PairwiseDistanceView materialized(const Dataset& dataset);
  static PairwiseDistanceView on_demand(const Dataset& dataset);

  double operator()(std::size_t i, std::size_t j) const {
    if (!matrix_.empty()) return matrix_[i * n_ + j];
    return compute(i, j);
  }
  std::size_t size() const { return n_; }
  bool is_materialized() const { return !matrix_.empty(); }

 private:
  explicit PairwiseDistanceView(const Dataset& dataset);
  double compute(std::size_t i, std::size_t j) const;

  const Dataset* dataset_;
  std::size_t n_;
  std::vector<double> matrix_;
};

// Dunn index: smallest between-cluster point distance divided by the largest
// within-cluster diameter; higher is better. Errors when fewer than two
// clusters are nonempty or every diameter is zero (singleton-only).
double dunn(const Dataset& dataset, std::span<const std::int32_t> assignment,
            const PairwiseDistanceView* view = nullptr);

// Davies-Bouldin index: mean over clusters of max_{j != i}
// (S_i + S_j) / M_ij, with S_i the root-mean-square member-to-center
// distance and M_ij the center distance; lower is better. Errors on
// coincident centers of nonempty clusters.
double davies_bouldin(const Dataset& dataset,
                      std::span<const std::int32_t> assignment,
                      std::span<const double> centers);

// Mean silhouette width: s(x) = (b-a)/max(a,b) with a the mean distance to
// the own cluster (excluding x) and b the smallest mean distance to another
// cluster; singletons score 0; higher is better. O(n^2).
double silhouette(const Dataset& dataset,
                  std::span<const std::int32_t> assignment,
                  const PairwiseDistanceView* view = nullptr);

// Silhouette with center distances in place of mean member distances:
// a = distance to the own center, b = smallest distance to another
// (nonempty) cluster's center. O(n*k).
double simplified_silhouette(const Dataset& dataset,
                             std::span<const std::int32_t> assignment,
                             std::span<const double> centers);

enum class DistanceIndex { dunn, davies_bouldin, silhouette, simplified_silhouette };

struct DistanceSweepOptions {
  // The O(n^2) indices refuse datasets above max_n points unless subsampling
  // is explicitly allowed; the subsample is uniform, seeded, drawn once per
  // sweep and reused for every k.
  std::size_t max_n = 20000;
  bool allow_subsample = false;
  std::uint64_t subsample_seed = 0;
};

// Evaluates the chosen index at every k >= 2 of the profile (assignments
// required) and selects by the index's better-direction (DB: argmin, others:
// argmax). k where the index is undefined (degenerate clusterings) are
// skipped. Subsampled sweeps carry the unstable flag.
CriterionResult sweep_distance_criterion(const Dataset& dataset,
                                         const SSEProfile& profile,
                                         DistanceIndex which,
                                         const DistanceSweepOptions& options = {});

}  // namespace kselect
