#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kselect/dataset.hpp"
#include "kselect/kmeans.hpp"

namespace kselect {

struct ProfileEntry {
  int k = 0;
  double sse = 0.0;
  // Best solution found for this k. Synthetic profiles built from bare SSE
  // sequences carry empty centers/assignment.
  ClusteringSolution solution;
};

// SSE-over-k curve that every selection criterion consumes; non-increasing
// in k by construction (monotone repair).
struct SSEProfile {
  int k_min = 1;
  int k_max = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  int restarts = 0;
  std::uint64_t master_seed = 0;
  bool has_assignments = false;
  std::vector<ProfileEntry> entries;  // ordered k_min..k_max, contiguous

  const ProfileEntry& at(int k) const;
  double sse_at(int k) const { return at(k).sse; }

  // Prefix copy over [k_min, new_k_max]. Because per-k seeds do not depend on
  // k_max and repair only looks backward, this equals a profile built
  // directly with the smaller k_max, bitwise.
  SSEProfile truncated(int new_k_max) const;
};

// Builds the per-k best-of-restarts profile and applies monotone repair:
// whenever SSE_{k} exceeds SSE_{k-1}, k is rerun once seeded with the
// (k-1)-solution's centers plus its worst-error point, keeping the better
// run. keep_assignments=false drops assignment vectors from the result (the
// sse sequence is identical either way).
SSEProfile build_profile(const Dataset& dataset, int k_min, int k_max,
                         int restarts, std::uint64_t master_seed,
                         bool keep_assignments);

// Synthetic profile from a bare SSE sequence (for score-function tests and
// worked examples); no solutions attached.
SSEProfile make_profile_from_sse(const std::vector<double>& sse_values,
                                 int k_min, std::size_t n, std::size_t d);

// Root-mean-squared deviation from the nearest center with the sample-size
// correction: sqrt(SSE_k / (N - k)). At k = N it is 0 when SSE is 0 (distinct
// points), otherwise an error.
double rmsd(const SSEProfile& profile, int k);

// JSON round-trip; floats carry 17 significant digits.
std::string profile_to_json(const SSEProfile& profile);
SSEProfile profile_from_json(const std::string& text);
void save_profile(const SSEProfile& profile, const std::string& path);
SSEProfile load_profile(const std::string& path);

}  // namespace kselect
