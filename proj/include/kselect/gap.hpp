#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kselect/criteria.hpp"
#include "kselect/dataset.hpp"
#include "kselect/profile.hpp"

namespace kselect {

// Tag mixed into a profile's master seed to derive the default reference
// stream, so gap evaluations are deterministic per profile.
inline constexpr std::uint64_t kGapSeedTag = 0x9a9;

// Gap statistic: Monte-Carlo baseline of log SSE from uniform reference data
// over the dataset's bounding box.
struct GapResult {
  std::map<int, double> gap;  // mean_b log SSE'_k(b) - log SSE_k
  std::map<int, double> sd;   // population sd of log SSE'_k, inflated by sqrt(1+1/B)
  int b_count = 0;
  std::uint64_t reference_seed = 0;
  int selected_k = 0;
  bool unstable = false;
  std::string note;
};

// n i.i.d. uniform points in the axis-aligned box (lo, hi); deterministic per
// seed. Coordinates are generated as box-relative offsets, so translating the
// box translates the sample exactly. Zero-extent axes stay constant.
Dataset reference_sample(const std::vector<double>& lo,
                         const std::vector<double>& hi, std::size_t n,
                         std::uint64_t seed);

// Clusters B uniform reference datasets with the profile's own k range,
// restart count and repair policy (reference b uses master seed
// derive_seed(seed, b)), then selects the smallest k with
// Gap_k >= Gap_{k+1} - sd_{k+1}. If no k qualifies, k_max is returned with
// the unstable flag.
GapResult gap_statistic(const Dataset& dataset, const SSEProfile& profile,
                        int b_count, std::uint64_t seed);

// Restricts a result to k <= new_k_max and re-applies the selection rule.
// Per-k gap values do not depend on the sweep's upper end (reference
// profiles share the data profile's truncation property), so this equals
// recomputing the statistic on the truncated profile with the same seed.
GapResult truncated_gap(const GapResult& full, int new_k_max);

// Multi-seed stability harness: rebuilds the data profile and the references
// for each master seed (references seeded with derive_seed(master, kGapSeedTag)).
// When the selections disagree, every result is flagged unstable.
std::vector<GapResult> gap_stability(const Dataset& dataset, int k_min,
                                     int k_max, int restarts, int b_count,
                                     std::span<const std::uint64_t> master_seeds);

// Flags all results unstable when their selections disagree; returns whether
// they did. (Exposed separately so the rule is unit-testable.)
bool mark_disagreeing_unstable(std::vector<GapResult>& results);

CriterionResult gap_criterion(const GapResult& gap);

}  // namespace kselect
