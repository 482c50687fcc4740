#include "kselect/gap.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kselect/kmeans.hpp"
#include "kselect/parallel.hpp"
#include "kselect/rng.hpp"

namespace kselect {

namespace {

// Smallest k with Gap_k >= Gap_{k+1} - sd_{k+1}; falls back to the largest k
// with the unstable flag when nothing inside the sweep qualifies.
void apply_gap_selection(GapResult& result) {
  const int k_min = result.gap.begin()->first;
  const int k_max = result.gap.rbegin()->first;
  result.selected_k = 0;
  for (int k = k_min; k < k_max; ++k) {
    if (result.gap.at(k) >= result.gap.at(k + 1) - result.sd.at(k + 1)) {
      result.selected_k = k;
      break;
    }
  }
  if (result.selected_k == 0) {
    result.selected_k = k_max;
    result.unstable = true;
    result.note = "no k satisfied the gap rule within the sweep";
  }
}

}  // namespace

Dataset reference_sample(const std::vector<double>& lo,
                         const std::vector<double>& hi, std::size_t n,
                         std::uint64_t seed) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("reference box must have matching nonzero dimensions");
  }
  if (n == 0) throw std::invalid_argument("reference sample needs at least one point");
  const std::size_t d = lo.size();
  std::vector<double> extent(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!(hi[j] >= lo[j])) {
      throw std::invalid_argument("reference box has hi < lo on some axis");
    }
    extent[j] = hi[j] - lo[j];
  }
  Rng rng(seed);
  std::vector<double> coords(n * d);
  // lo + u * extent keeps the draw a pure box-relative offset: shifting the
  // box shifts the sample without disturbing the random stream.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      coords[i * d + j] = lo[j] + rng.next_double() * extent[j];
    }
  }
  DatasetMeta meta;
  meta.family = Family::uniform;
  meta.true_k = 1;
  meta.seed = seed;
  return Dataset(std::move(coords), n, d, std::move(meta));
}

GapResult gap_statistic(const Dataset& dataset, const SSEProfile& profile,
                        int b_count, std::uint64_t seed) {
  if (b_count < 2) throw std::invalid_argument("gap statistic needs at least 2 reference sets");
  if (profile.n != dataset.size()) {
    throw std::invalid_argument("profile was built from a different dataset size");
  }

  const auto [lo, hi] = dataset.bounding_box();
  const int k_min = profile.k_min;
  const int k_max = profile.k_max;
  const int k_count = k_max - k_min + 1;

  // One clustered profile per reference set, same k range and restart budget
  // as the data profile. Each reference run is already internally parallel,
  // so the b loop stays sequential to keep peak memory bounded.
  std::vector<std::vector<double>> ref_log_sse(
      static_cast<std::size_t>(b_count),
      std::vector<double>(static_cast<std::size_t>(k_count)));
  for (int b = 0; b < b_count; ++b) {
    const std::uint64_t ref_seed = derive_seed(seed, static_cast<std::uint64_t>(b));
    Dataset ref = reference_sample(lo, hi, dataset.size(), ref_seed);
    SSEProfile ref_profile =
        build_profile(ref, k_min, k_max, profile.restarts, ref_seed, false);
    for (int k = k_min; k <= k_max; ++k) {
      const double s = ref_profile.sse_at(k);
      ref_log_sse[static_cast<std::size_t>(b)][static_cast<std::size_t>(k - k_min)] =
          s > 0.0 ? std::log(s) : -std::numeric_limits<double>::infinity();
    }
  }

  GapResult result;
  result.b_count = b_count;
  result.reference_seed = seed;
  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k - k_min);
    double mean = 0.0;
    for (int b = 0; b < b_count; ++b) mean += ref_log_sse[static_cast<std::size_t>(b)][idx];
    mean /= b_count;
    double var = 0.0;
    for (int b = 0; b < b_count; ++b) {
      const double delta = ref_log_sse[static_cast<std::size_t>(b)][idx] - mean;
      var += delta * delta;
    }
    var /= b_count;  // population variance across the B references
    const double data_sse = profile.sse_at(k);
    const double log_data =
        data_sse > 0.0 ? std::log(data_sse) : -std::numeric_limits<double>::infinity();
    result.gap[k] = mean - log_data;
    // sqrt(1 + 1/B) folds the simulation error of the mean into the spread.
    result.sd[k] = std::sqrt(var) * std::sqrt(1.0 + 1.0 / b_count);
  }

  apply_gap_selection(result);
  return result;
}

GapResult truncated_gap(const GapResult& full, int new_k_max) {
  if (full.gap.empty()) throw std::invalid_argument("empty gap result");
  const int k_min = full.gap.begin()->first;
  const int k_max = full.gap.rbegin()->first;
  if (new_k_max < k_min + 1 || new_k_max > k_max) {
    throw std::invalid_argument("gap truncation point outside the sweep");
  }
  GapResult result;
  result.b_count = full.b_count;
  result.reference_seed = full.reference_seed;
  for (int k = k_min; k <= new_k_max; ++k) {
    result.gap[k] = full.gap.at(k);
    result.sd[k] = full.sd.at(k);
  }
  apply_gap_selection(result);
  return result;
}

std::vector<GapResult> gap_stability(const Dataset& dataset, int k_min,
                                     int k_max, int restarts, int b_count,
                                     std::span<const std::uint64_t> master_seeds) {
  if (master_seeds.empty()) {
    throw std::invalid_argument("gap stability needs at least one master seed");
  }
  std::vector<GapResult> results;
  results.reserve(master_seeds.size());
  for (const std::uint64_t master : master_seeds) {
    SSEProfile profile = build_profile(dataset, k_min, k_max, restarts, master, false);
    results.push_back(gap_statistic(dataset, profile, b_count, derive_seed(master, kGapSeedTag)));
  }
  mark_disagreeing_unstable(results);
  return results;
}

bool mark_disagreeing_unstable(std::vector<GapResult>& results) {
  bool disagree = false;
  for (const GapResult& r : results) {
    if (r.selected_k != results.front().selected_k) disagree = true;
  }
  if (disagree) {
    for (GapResult& r : results) {
      r.unstable = true;
      if (r.note.empty()) r.note = "selection varies across probe seeds";
    }
  }
  return disagree;
}

CriterionResult gap_criterion(const GapResult& gap) {
  CriterionResult result;
  result.name = "gap";
  result.scores = gap.gap;
  result.selected_k = gap.selected_k;
  result.unstable = gap.unstable;
  result.note = gap.note;
  return result;
}

}  // namespace kselect
