#include "kselect/dataset.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "kselect/io_util.hpp"
#include "kselect/rng.hpp"

namespace kselect {

Family family_from_string(const std::string& name) {
  if (name == "well_separated") return Family::well_separated;
  if (name == "overlapping") return Family::overlapping;
  if (name == "many_blobs") return Family::many_blobs;
  if (name == "uniform") return Family::uniform;
  if (name == "normal") return Family::normal;
  throw std::invalid_argument("unknown dataset family: '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::well_separated: return "well_separated";
    case Family::overlapping: return "overlapping";
    case Family::many_blobs: return "many_blobs";
    case Family::uniform: return "uniform";
    case Family::normal: return "normal";
  }
  throw std::invalid_argument("invalid family value");
}

Placement placement_from_string(const std::string& name) {
  if (name == "grid") return Placement::grid;
  if (name == "random") return Placement::random;
  throw std::invalid_argument("unknown placement: '" + name + "'");
}

std::string to_string(Placement placement) {
  return placement == Placement::grid ? "grid" : "random";
}

Dataset::Dataset(std::vector<double> coords, std::size_t n, std::size_t d,
                 std::optional<DatasetMeta> meta)
    : coords_(std::move(coords)), n_(n), d_(d), meta_(std::move(meta)) {
  if (n_ == 0) throw std::invalid_argument("empty dataset");
  if (d_ == 0) throw std::invalid_argument("dataset dimensionality must be >= 1");
  if (coords_.size() != n_ * d_)
    throw std::invalid_argument("coordinate buffer does not match n*d");
  for (double c : coords_)
    if (!std::isfinite(c))
      throw std::invalid_argument("dataset contains a non-finite coordinate");
}

std::pair<std::vector<double>, std::vector<double>> Dataset::bounding_box() const {
  std::vector<double> lo(point(0).begin(), point(0).end());
  std::vector<double> hi = lo;
  for (std::size_t i = 1; i < n_; ++i) {
    const auto p = point(i);
    for (std::size_t j = 0; j < d_; ++j) {
      if (p[j] < lo[j]) lo[j] = p[j];
      if (p[j] > hi[j]) hi[j] = p[j];
    }
  }
  return {lo, hi};
}

namespace {

// Splits n points as evenly as possible across `blobs` blobs.
std::vector<std::size_t> blob_sizes(std::size_t n, std::size_t blobs) {
  std::vector<std::size_t> sizes(blobs, n / blobs);
  for (std::size_t b = 0; b < n % blobs; ++b) ++sizes[b];
  return sizes;
}

// Draws blob centers uniformly in [0, box]^d, rejecting candidates closer
// than min_dist to an already accepted center.
std::vector<double> rejection_centers(Rng& rng, std::size_t blobs, std::size_t d,
                                      double box, double min_dist) {
  std::vector<double> centers;
  centers.reserve(blobs * d);
  std::vector<double> candidate(d);
  const double min_dist2 = min_dist * min_dist;
  for (std::size_t b = 0; b < blobs; ++b) {
    bool placed = false;
    for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
      for (std::size_t j = 0; j < d; ++j) candidate[j] = rng.uniform(0.0, box);
      placed = true;
      for (std::size_t other = 0; other < b && placed; ++other) {
        double dist2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double diff = candidate[j] - centers[other * d + j];
          dist2 += diff * diff;
        }
        if (dist2 < min_dist2) placed = false;
      }
    }
    if (!placed)
      throw std::runtime_error("could not place separated blob centers");
    centers.insert(centers.end(), candidate.begin(), candidate.end());
  }
  return centers;
}

// Appends Gaussian blob samples around each center, blob by blob.
void sample_blobs(Rng& rng, const std::vector<double>& centers, std::size_t d,
                  const std::vector<std::size_t>& sizes, double sigma,
                  std::vector<double>& out) {
  const std::size_t blobs = sizes.size();
  for (std::size_t b = 0; b < blobs; ++b) {
    for (std::size_t i = 0; i < sizes[b]; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out.push_back(centers[b * d + j] + sigma * rng.normal());
  }
}

}  // namespace

Dataset generate(const GeneratorSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("generator requires n > 0");
  if (spec.dim == 0) throw std::invalid_argument("generator requires dim >= 1");
  if (spec.blob_std < 0.0) throw std::invalid_argument("blob_std must be >= 0");

  const std::size_t d = spec.dim;
  Rng rng(spec.seed);
  // Placement geometry scale: keeps centers apart even when blob_std = 0.
  const double scale = spec.blob_std > 0.0 ? spec.blob_std : 1.0;

  DatasetMeta meta;
  meta.family = spec.family;
  meta.seed = spec.seed;
  meta.blob_std = spec.blob_std;

  std::vector<double> coords;
  coords.reserve(spec.n * d);

  switch (spec.family) {
    case Family::well_separated: {
      if (spec.n < 3)
        throw std::invalid_argument("well_separated requires n >= 3");
      meta.true_k = 3;
      meta.blob_centers =
          rejection_centers(rng, 3, d, 20.0 * scale, 10.0 * scale);
      sample_blobs(rng, meta.blob_centers, d, blob_sizes(spec.n, 3),
                   spec.blob_std, coords);
      break;
    }
    case Family::overlapping: {
      if (spec.n < 3) throw std::invalid_argument("overlapping requires n >= 3");
      if (d < 2) throw std::invalid_argument("overlapping requires dim >= 2");
      meta.true_k = 3;
      // Three blob centers on an equilateral triangle of side 3*scale
      // (center spacing ~ 3 standard deviations), randomly rotated and
      // positioned.
      const double circumradius = 3.0 * scale / std::sqrt(3.0);
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      std::vector<double> base(d, 0.0);
      base[0] = rng.uniform(0.0, 10.0 * scale);
      base[1] = rng.uniform(0.0, 10.0 * scale);
      std::vector<double> centers;
      for (int v = 0; v < 3; ++v) {
        const double phi = theta + 2.0 * std::numbers::pi * v / 3.0;
        for (std::size_t j = 0; j < d; ++j) {
          double c = base[j];
          if (j == 0) c += circumradius * std::cos(phi);
          if (j == 1) c += circumradius * std::sin(phi);
          centers.push_back(c);
        }
      }
      meta.blob_centers = centers;
      sample_blobs(rng, centers, d, blob_sizes(spec.n, 3), spec.blob_std, coords);
      break;
    }
    case Family::many_blobs: {
      if (spec.n < 25) throw std::invalid_argument("many_blobs requires n >= 25");
      meta.true_k = 25;
      meta.placement = spec.placement;
      std::vector<double> centers;
      if (spec.placement == Placement::grid) {
        if (d < 2) throw std::invalid_argument("grid placement requires dim >= 2");
        // 5x5 grid with spacing 10*scale: mutually well separated.
        for (int gx = 0; gx < 5; ++gx)
          for (int gy = 0; gy < 5; ++gy) {
            centers.push_back(10.0 * scale * gx);
            centers.push_back(10.0 * scale * gy);
            for (std::size_t j = 2; j < d; ++j) centers.push_back(0.0);
          }
      } else {
        // Random placement in [0, 20*scale]^d; blobs may overlap.
        for (int b = 0; b < 25; ++b)
          for (std::size_t j = 0; j < d; ++j)
            centers.push_back(rng.uniform(0.0, 20.0 * scale));
      }
      meta.blob_centers = centers;
      sample_blobs(rng, centers, d, blob_sizes(spec.n, 25), spec.blob_std, coords);
      break;
    }
    case Family::uniform: {
      meta.true_k = 1;
      std::vector<std::pair<double, double>> bounds = spec.bounds;
      if (bounds.empty()) bounds.assign(d, {0.0, 1.0});
      if (bounds.size() != d)
        throw std::invalid_argument("uniform bounds must match dim");
      for (const auto& [lo, hi] : bounds)
        if (!(lo <= hi)) throw std::invalid_argument("invalid uniform bounds");
      for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < d; ++j)
          coords.push_back(rng.uniform(bounds[j].first, bounds[j].second));
      break;
    }
    case Family::normal: {
      meta.true_k = 1;
      for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < d; ++j) coords.push_back(rng.normal());
      break;
    }
  }

  return Dataset(std::move(coords), spec.n, d, std::move(meta));
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      cells.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return cells;
}

// Parses "# kselect key=value ..." comments written by save_csv.
std::optional<DatasetMeta> parse_meta_comment(std::string_view line) {
  std::istringstream in{std::string(line.substr(1))};
  std::string tag;
  in >> tag;
  if (tag != "kselect") return std::nullopt;
  DatasetMeta meta;
  bool have_family = false;
  std::string token;
  try {
    while (in >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "family") {
        meta.family = family_from_string(value);
        have_family = true;
      } else if (key == "true_k") {
        meta.true_k = static_cast<int>(parse_int(value));
      } else if (key == "seed") {
        meta.seed = parse_u64(value);
      } else if (key == "blob_std") {
        meta.blob_std = parse_double(value);
      } else if (key == "placement") {
        meta.placement = placement_from_string(value);
      }
    }
  } catch (const std::exception&) {
    return std::nullopt;  // malformed metadata is treated as a plain comment
  }
  if (!have_family) return std::nullopt;
  return meta;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<double> coords;
  std::size_t d = 0;
  std::size_t n = 0;
  std::optional<DatasetMeta> meta;
  bool header_allowed = true;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    // Skip blank lines and comments ('#'-prefixed; kselect metadata restored).
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!meta) meta = parse_meta_comment(line);
      continue;
    }

    const auto cells = split(line, ',');
    std::vector<double> row;
    row.reserve(cells.size());
    bool numeric = true;
    try {
      for (const auto cell : cells) row.push_back(parse_double(cell));
    } catch (const std::invalid_argument&) {
      numeric = false;
    }
    if (!numeric) {
      // One non-numeric row is tolerated as a column header, but only before
      // any data row.
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw std::invalid_argument("non-numeric cell in CSV row " +
                                  std::to_string(n + 1));
    }
    header_allowed = false;
    if (d == 0) {
      d = row.size();
    } else if (row.size() != d) {
      throw std::invalid_argument("inconsistent dimensionality in CSV row " +
                                  std::to_string(n + 1));
    }
    coords.insert(coords.end(), row.begin(), row.end());
    ++n;
  }

  if (n == 0) throw std::invalid_argument("empty dataset: " + path);
  return Dataset(std::move(coords), n, d, std::move(meta));
}

void save_csv(const Dataset& dataset, const std::string& path) {
  std::string out;
  if (dataset.meta()) {
    const DatasetMeta& meta = *dataset.meta();
    out += "# kselect family=" + to_string(meta.family) +
           " n=" + std::to_string(dataset.size()) +
           " d=" + std::to_string(dataset.dim()) +
           " seed=" + std::to_string(meta.seed) +
           " true_k=" + std::to_string(meta.true_k) +
           " blob_std=" + format_double(meta.blob_std);
    if (meta.placement) out += " placement=" + to_string(*meta.placement);
    out += "\n";
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto p = dataset.point(i);
    for (std::size_t j = 0; j < dataset.dim(); ++j) {
      if (j > 0) out += ',';
      out += format_double(p[j]);
    }
    out += '\n';
  }
  atomic_write_file(path, out);
}

}  // namespace kselect
