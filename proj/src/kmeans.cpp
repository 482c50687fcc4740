#include "kselect/kmeans.hpp"

#include <cassert>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "kselect/parallel.hpp"
#include "kselect/rng.hpp"

namespace kselect {

namespace {

constexpr int kMaxIterations = 1000;

inline double dist2(const double* a, const double* b, std::size_t d) {
  if (d == 2) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

// Nearest center (lowest index on ties) and its squared distance.
inline std::pair<std::int32_t, double> nearest_center(
    const double* point, const double* centers, std::size_t k, std::size_t d) {
  std::int32_t best = 0;
  double best_dist = dist2(point, centers, d);
  for (std::size_t c = 1; c < k; ++c) {
    const double dist = dist2(point, centers + c * d, d);
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<std::int32_t>(c);
    }
  }
  return {best, best_dist};
}

}  // namespace

double sse(const Dataset& dataset, std::span<const double> centers) {
  const std::size_t d = dataset.dim();
  if (centers.empty() || centers.size() % d != 0)
    throw std::invalid_argument("centers do not match dataset dimensionality");
  const std::size_t k = centers.size() / d;
  KahanSum total;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    total.add(nearest_center(dataset.point(i).data(), centers.data(), k, d).second);
  return total.sum;
}

double recompute_sse(const Dataset& dataset, std::span<const double> centers,
                     std::span<const std::int32_t> assignment) {
  const std::size_t d = dataset.dim();
  if (centers.empty() || centers.size() % d != 0)
    throw std::invalid_argument("centers do not match dataset dimensionality");
  if (assignment.size() != dataset.size())
    throw std::invalid_argument("assignment size does not match dataset");
  const auto k = static_cast<std::int32_t>(centers.size() / d);
  KahanSum total;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::int32_t c = assignment[i];
    if (c < 0 || c >= k) throw std::invalid_argument("assignment index out of range");
    total.add(dist2(dataset.point(i).data(), centers.data() + c * d, d));
  }
  return total.sum;
}

std::vector<double> seed_plus_plus(const Dataset& dataset, int k,
                                   std::uint64_t seed) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("k exceeds the number of points");

  Rng rng(seed);
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(k) * d);
  std::vector<bool> chosen(n, false);
  // Squared distance of each point to its nearest already-chosen center.
  std::vector<double> weight(n, std::numeric_limits<double>::infinity());

  std::size_t first = rng.below(n);
  chosen[first] = true;
  centers.insert(centers.end(), dataset.point(first).begin(),
                 dataset.point(first).end());

  for (int c = 1; c < k; ++c) {
    const double* last = centers.data() + (c - 1) * d;
    KahanSum total;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) {
        weight[i] = 0.0;
        continue;
      }
      const double dist = dist2(dataset.point(i).data(), last, d);
      if (dist < weight[i]) weight[i] = dist;
      total.add(weight[i]);
    }

    std::size_t pick = n;
    if (total.sum > 0.0) {
      const double u = rng.next_double() * total.sum;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        cumulative += weight[i];
        if (cumulative > u) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // floating-point roundoff ran past the end
        for (std::size_t i = n; i-- > 0;)
          if (!chosen[i] && weight[i] > 0.0) {
            pick = i;
            break;
          }
      }
    }
    if (pick == n) {
      // All remaining points duplicate the chosen centers; pick uniformly
      // among the unchosen so the centers stay distinct indices.
      std::size_t remaining = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen[i]) ++remaining;
      std::size_t target = rng.below(remaining);
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        if (target-- == 0) {
          pick = i;
          break;
        }
      }
    }
    chosen[pick] = true;
    centers.insert(centers.end(), dataset.point(pick).begin(),
                   dataset.point(pick).end());
  }
  return centers;
}

ClusteringSolution lloyd(const Dataset& dataset,
                         std::vector<double> initial_centers,
                         std::uint64_t seed) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  if (initial_centers.empty() || initial_centers.size() % d != 0)
    throw std::invalid_argument("initial centers do not match dataset dimensionality");
  const std::size_t k = initial_centers.size() / d;
  if (k > n) throw std::invalid_argument("k exceeds the number of points");

  std::vector<double> centers = std::move(initial_centers);
  std::vector<std::int32_t> assignment(n, -1);
  std::vector<double> point_error(n, 0.0);
  std::vector<double> sums(k * d, 0.0);
  std::vector<std::size_t> counts(k, 0);

  double current_sse = 0.0;
  const auto assign_pass = [&]() -> std::size_t {
    std::size_t changes = 0;
    KahanSum total;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [best, dist] =
          nearest_center(dataset.point(i).data(), centers.data(), k, d);
      point_error[i] = dist;
      total.add(dist);
      if (assignment[i] != best) {
        assignment[i] = best;
        ++changes;
      }
    }
    current_sse = total.sum;
    return changes;
  };

  assign_pass();
  int iterations = 0;
#ifndef NDEBUG
  double previous_sse = current_sse;
#endif

  while (iterations < kMaxIterations) {
    ++iterations;
    // Centroid update.
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = dataset.point(i).data();
      double* s = sums.data() + static_cast<std::size_t>(assignment[i]) * d;
      for (std::size_t j = 0; j < d; ++j) s[j] += p[j];
      ++counts[assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // handled below
      const double inv = 1.0 / static_cast<double>(counts[c]);
      for (std::size_t j = 0; j < d; ++j) centers[c * d + j] = sums[c * d + j] * inv;
    }

    // Empty clusters: reseed at the point with the largest current squared
    // error (successive empties take successive worst points). A point with
    // zero error cannot improve anything, so if only zero-error points remain
    // the cluster is left empty.
    bool reseeded = false;
    std::vector<std::size_t> taken;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t worst = n;
      double worst_error = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (point_error[i] > worst_error) {
          bool already = false;
          for (const std::size_t t : taken)
            if (t == i) already = true;
          if (!already) {
            worst = i;
            worst_error = point_error[i];
          }
        }
      }
      if (worst == n) continue;
      taken.push_back(worst);
      const double* p = dataset.point(worst).data();
      for (std::size_t j = 0; j < d; ++j) centers[c * d + j] = p[j];
      reseeded = true;
    }

    const std::size_t changes = assign_pass();
#ifndef NDEBUG
    assert(current_sse <= previous_sse * (1.0 + 1e-12) + 1e-12);
    previous_sse = current_sse;
#endif
    if (changes == 0 && !reseeded) break;
  }
  if (iterations >= kMaxIterations)
    std::cerr << "kselect: warning: lloyd hit the " << kMaxIterations
              << "-iteration cap before converging (k=" << k << ", n=" << n
              << ")\n";

  ClusteringSolution solution;
  solution.k = static_cast<int>(k);
  solution.centers = std::move(centers);
  solution.assignment = std::move(assignment);
  solution.sse = current_sse;
  solution.iterations = iterations;
  solution.seed = seed;
  return solution;
}

ClusteringSolution kmeans_run(const Dataset& dataset, int k, std::uint64_t seed) {
  return lloyd(dataset, seed_plus_plus(dataset, k, seed), seed);
}

ClusteringSolution best_of_restarts(const Dataset& dataset, int k, int restarts,
                                    std::uint64_t master_seed) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  std::vector<ClusteringSolution> runs(restarts);
  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    runs[r] = kmeans_run(dataset, k,
                         derive_seed(master_seed, static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(r)));
  });
  // Fixed-order reduction: lowest SSE wins, ties to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].sse < runs[best].sse) best = r;
  return std::move(runs[best]);
}

std::size_t worst_error_point(const Dataset& dataset,
                              const ClusteringSolution& solution) {
  const std::size_t d = dataset.dim();
  std::size_t worst = 0;
  double worst_error = -1.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const double err =
        dist2(dataset.point(i).data(),
              solution.centers.data() + static_cast<std::size_t>(solution.assignment[i]) * d,
              d);
    if (err > worst_error) {
      worst_error = err;
      worst = i;
    }
  }
  return worst;
}

}  // namespace kselect
