#include "kselect/profile.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "kselect/io_util.hpp"
#include "kselect/parallel.hpp"
#include "kselect/rng.hpp"

namespace kselect {

const ProfileEntry& SSEProfile::at(int k) const {
  if (k < k_min || k > k_max)
    throw std::invalid_argument("k=" + std::to_string(k) + " outside profile range [" +
                                std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
  return entries[static_cast<std::size_t>(k - k_min)];
}

SSEProfile SSEProfile::truncated(int new_k_max) const {
  if (new_k_max < k_min || new_k_max > k_max)
    throw std::invalid_argument("truncation k_max outside profile range");
  SSEProfile out = *this;
  out.k_max = new_k_max;
  out.entries.resize(static_cast<std::size_t>(new_k_max - k_min + 1));
  return out;
}

namespace {

void validate_profile(const SSEProfile& profile) {
  if (profile.n == 0 || profile.d == 0)
    throw std::invalid_argument("profile requires n >= 1 and d >= 1");
  if (profile.k_min < 1 || profile.k_max < profile.k_min)
    throw std::invalid_argument("profile requires 1 <= k_min <= k_max");
  if (static_cast<std::size_t>(profile.k_max) > profile.n)
    throw std::invalid_argument("profile k_max exceeds the number of points");
  const auto expected =
      static_cast<std::size_t>(profile.k_max - profile.k_min + 1);
  if (profile.entries.size() != expected)
    throw std::invalid_argument("profile entries must cover k_min..k_max contiguously");
  for (std::size_t i = 0; i < profile.entries.size(); ++i) {
    const ProfileEntry& entry = profile.entries[i];
    if (entry.k != profile.k_min + static_cast<int>(i))
      throw std::invalid_argument("profile entries out of order");
    if (!std::isfinite(entry.sse) || entry.sse < 0.0)
      throw std::invalid_argument("profile sse must be finite and nonnegative");
    if (i > 0 && entry.sse > profile.entries[i - 1].sse)
      throw std::invalid_argument("profile sse must be non-increasing in k");
  }
}

}  // namespace

SSEProfile build_profile(const Dataset& dataset, int k_min, int k_max,
                         int restarts, std::uint64_t master_seed,
                         bool keep_assignments) {
  if (k_min < 1 || k_max < k_min)
    throw std::invalid_argument("build_profile requires 1 <= k_min <= k_max");
  if (static_cast<std::size_t>(k_max) > dataset.size())
    throw std::invalid_argument("k_max exceeds the number of points");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");

  const int k_count = k_max - k_min + 1;
  // All (k, restart) runs are independent jobs; the per-k best is then picked
  // in fixed restart order, so the outcome is scheduling-independent.
  std::vector<ClusteringSolution> runs(static_cast<std::size_t>(k_count) *
                                       static_cast<std::size_t>(restarts));
  parallel_for(runs.size(), [&](std::size_t job) {
    const int k = k_min + static_cast<int>(job / static_cast<std::size_t>(restarts));
    const auto r = static_cast<std::uint64_t>(job % static_cast<std::size_t>(restarts));
    runs[job] = kmeans_run(
        dataset, k, derive_seed(master_seed, static_cast<std::uint64_t>(k), r));
  });

  SSEProfile profile;
  profile.k_min = k_min;
  profile.k_max = k_max;
  profile.n = dataset.size();
  profile.d = dataset.dim();
  profile.restarts = restarts;
  profile.master_seed = master_seed;
  profile.has_assignments = keep_assignments;
  profile.entries.reserve(static_cast<std::size_t>(k_count));

  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t base = static_cast<std::size_t>(k - k_min) *
                             static_cast<std::size_t>(restarts);
    std::size_t best = base;
    for (std::size_t r = base + 1; r < base + static_cast<std::size_t>(restarts); ++r)
      if (runs[r].sse < runs[best].sse) best = r;
    ClusteringSolution solution = std::move(runs[best]);

    // Monotone repair: a (k-1)-solution plus its worst-error point as an
    // extra center is a valid k-clustering with strictly smaller SSE, so a
    // Lloyd run seeded from it can only land at or below SSE_{k-1}.
    if (!profile.entries.empty() && solution.sse > profile.entries.back().sse) {
      const ClusteringSolution& previous = profile.entries.back().solution;
      std::vector<double> centers = previous.centers;
      const auto extra = dataset.point(worst_error_point(dataset, previous));
      centers.insert(centers.end(), extra.begin(), extra.end());
      ClusteringSolution repaired =
          lloyd(dataset, std::move(centers),
                derive_seed(master_seed, static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(restarts)));
      if (repaired.sse < solution.sse) solution = std::move(repaired);
    }

    ProfileEntry entry;
    entry.k = k;
    entry.sse = solution.sse;
    entry.solution = std::move(solution);
    profile.entries.push_back(std::move(entry));
  }

  if (!keep_assignments)
    for (ProfileEntry& entry : profile.entries) {
      entry.solution.assignment.clear();
      entry.solution.assignment.shrink_to_fit();
    }

  validate_profile(profile);
  return profile;
}

SSEProfile make_profile_from_sse(const std::vector<double>& sse_values,
                                 int k_min, std::size_t n, std::size_t d) {
  if (sse_values.empty()) throw std::invalid_argument("empty sse sequence");
  SSEProfile profile;
  profile.k_min = k_min;
  profile.k_max = k_min + static_cast<int>(sse_values.size()) - 1;
  profile.n = n;
  profile.d = d;
  profile.restarts = 0;
  profile.master_seed = 0;
  profile.has_assignments = false;
  for (std::size_t i = 0; i < sse_values.size(); ++i) {
    ProfileEntry entry;
    entry.k = k_min + static_cast<int>(i);
    entry.sse = sse_values[i];
    entry.solution.k = entry.k;
    profile.entries.push_back(std::move(entry));
  }
  validate_profile(profile);
  return profile;
}

double rmsd(const SSEProfile& profile, int k) {
  const double sse_k = profile.sse_at(k);
  const auto n = static_cast<double>(profile.n);
  if (static_cast<std::size_t>(k) == profile.n) {
    if (sse_k == 0.0) return 0.0;
    throw std::invalid_argument("rmsd undefined at k = N with nonzero SSE");
  }
  return std::sqrt(sse_k / (n - static_cast<double>(k)));
}

std::string profile_to_json(const SSEProfile& profile) {
  std::string out;
  out += "{\n";
  out += "  \"n\": " + std::to_string(profile.n) + ",\n";
  out += "  \"d\": " + std::to_string(profile.d) + ",\n";
  out += "  \"k_min\": " + std::to_string(profile.k_min) + ",\n";
  out += "  \"k_max\": " + std::to_string(profile.k_max) + ",\n";
  out += "  \"restarts\": " + std::to_string(profile.restarts) + ",\n";
  out += "  \"master_seed\": " + std::to_string(profile.master_seed) + ",\n";
  out += "  \"entries\": [\n";
  for (std::size_t i = 0; i < profile.entries.size(); ++i) {
    const ProfileEntry& entry = profile.entries[i];
    out += "    {\"k\": " + std::to_string(entry.k) +
           ", \"sse\": " + format_double(entry.sse) + ", \"centers\": [";
    const std::size_t k_centers = entry.solution.centers.size() / profile.d;
    for (std::size_t c = 0; c < k_centers; ++c) {
      if (c > 0) out += ", ";
      out += '[';
      for (std::size_t j = 0; j < profile.d; ++j) {
        if (j > 0) out += ", ";
        out += format_double(entry.solution.centers[c * profile.d + j]);
      }
      out += ']';
    }
    out += ']';
    if (profile.has_assignments) {
      out += ", \"assignment\": [";
      for (std::size_t p = 0; p < entry.solution.assignment.size(); ++p) {
        if (p > 0) out += ',';
        out += std::to_string(entry.solution.assignment[p]);
      }
      out += ']';
    }
    out += '}';
    if (i + 1 < profile.entries.size()) out += ',';
    out += '\n';
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

SSEProfile profile_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid profile JSON: ") + e.what());
  }
  try {
    SSEProfile profile;
    profile.n = doc.at("n").get<std::size_t>();
    profile.d = doc.at("d").get<std::size_t>();
    profile.k_min = doc.at("k_min").get<int>();
    profile.k_max = doc.at("k_max").get<int>();
    profile.restarts = doc.at("restarts").get<int>();
    profile.master_seed = doc.at("master_seed").get<std::uint64_t>();

    const auto& entries = doc.at("entries");
    bool any_assignment = false;
    bool all_assignment = true;
    for (const auto& item : entries) {
      ProfileEntry entry;
      entry.k = item.at("k").get<int>();
      entry.sse = item.at("sse").get<double>();
      entry.solution.k = entry.k;
      entry.solution.sse = entry.sse;
      const auto& centers = item.at("centers");
      for (const auto& row : centers) {
        if (row.size() != profile.d)
          throw std::invalid_argument("center row does not match profile d");
        for (const auto& coord : row)
          entry.solution.centers.push_back(coord.get<double>());
      }
      if (item.contains("assignment")) {
        any_assignment = true;
        const auto& assignment = item.at("assignment");
        if (assignment.size() != profile.n)
          throw std::invalid_argument("assignment length does not match profile n");
        entry.solution.assignment.reserve(profile.n);
        for (const auto& a : assignment) {
          const int value = a.get<int>();
          if (value < 0 || value >= entry.k)
            throw std::invalid_argument("assignment index out of range");
          entry.solution.assignment.push_back(static_cast<std::int32_t>(value));
        }
      } else {
        all_assignment = false;
      }
      profile.entries.push_back(std::move(entry));
    }
    if (any_assignment && !all_assignment)
      throw std::invalid_argument("profile mixes entries with and without assignments");
    profile.has_assignments = any_assignment;
    validate_profile(profile);
    return profile;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid profile JSON: ") + e.what());
  }
}

void save_profile(const SSEProfile& profile, const std::string& path) {
  atomic_write_file(path, profile_to_json(profile));
}

SSEProfile load_profile(const std::string& path) {
  return profile_from_json(read_text_file(path));
}

}  // namespace kselect
