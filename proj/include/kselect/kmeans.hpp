#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kselect/dataset.hpp"

namespace kselect {

// Compensated (Kahan) accumulator; SSE sums feed ratio criteria that are
// sensitive to low-order bits, so all SSE accumulation uses this.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;
  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
};

struct ClusteringSolution {
  int k = 0;
  std::vector<double> centers;           // k x d, row-major
  std::vector<std::int32_t> assignment;  // size n, values in [0, k)
  double sse = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

// Sum over points of the squared distance to the nearest center, with
// nearest-center ties going to the lowest index.
double sse(const Dataset& dataset, std::span<const double> centers);

// SSE under a fixed assignment (used to validate solutions).
double recompute_sse(const Dataset& dataset, std::span<const double> centers,
                     std::span<const std::int32_t> assignment);

// k-means++ initialization: first center uniform over points, each further
// center drawn from the points with probability proportional to the squared
// distance to the nearest chosen center; always k distinct point indices.
std::vector<double> seed_plus_plus(const Dataset& dataset, int k,
                                   std::uint64_t seed);

// Lloyd's alternating optimization from the given initial centers, run to the
// assignment fixpoint (hard cap 1000 iterations, warned on stderr). Empty
// clusters are reseeded at the point with the largest current squared error.
// `seed` is recorded on the solution for provenance only.
ClusteringSolution lloyd(const Dataset& dataset,
                         std::vector<double> initial_centers,
                         std::uint64_t seed = 0);

// One seeded k-means run: seed_plus_plus followed by lloyd.
ClusteringSolution kmeans_run(const Dataset& dataset, int k, std::uint64_t seed);

// Best (lowest-SSE) of `restarts` runs with substream seeds
// derive_seed(master_seed, k, restart); ties go to the lowest restart index,
// and the result is independent of execution order.
ClusteringSolution best_of_restarts(const Dataset& dataset, int k, int restarts,
                                    std::uint64_t master_seed);

// Index of the point with the largest squared error under the solution.
std::size_t worst_error_point(const Dataset& dataset,
                              const ClusteringSolution& solution);

}  // namespace kselect
