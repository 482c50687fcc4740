#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kselect {

enum class Family { well_separated, overlapping, many_blobs, uniform, normal };
enum class Placement { grid, random };

Family family_from_string(const std::string& name);
std::string to_string(Family family);
Placement placement_from_string(const std::string& name);
std::string to_string(Placement placement);

// Provenance carried by generated datasets (and preserved through CSV
// round-trips); true_k is the ground-truth cluster count of the family.
struct DatasetMeta {
  Family family = Family::uniform;
  int true_k = 1;
  std::uint64_t seed = 0;
  double blob_std = 1.0;
  std::optional<Placement> placement;  // many_blobs only
  // Blob centers actually used (in-memory only, not serialized); handy for
  // verifying placement constraints in tests.
  std::vector<double> blob_centers;
};

// Immutable N x d point table, row-major.
class Dataset {
 public:
  Dataset(std::vector<double> coords, std::size_t n, std::size_t d,
          std::optional<DatasetMeta> meta = std::nullopt);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * d_, d_};
  }
  const std::optional<DatasetMeta>& meta() const { return meta_; }

  // Axis-aligned bounding box: (lows, highs), each of length d.
  std::pair<std::vector<double>, std::vector<double>> bounding_box() const;

 private:
  std::vector<double> coords_;
  std::size_t n_;
  std::size_t d_;
  std::optional<DatasetMeta> meta_;
};

struct GeneratorSpec {
  Family family = Family::uniform;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 2;
  // Per-point Gaussian spread of blob families; 0 collapses blobs onto their
  // centers. Placement geometry scales with max(blob_std, 1) so zero-spread
  // blobs stay distinct.
  double blob_std = 1.0;
  Placement placement = Placement::random;  // many_blobs only
  // Uniform family bounds per axis; empty means [0,1] on every axis.
  std::vector<std::pair<double, double>> bounds;
};

// Deterministic per spec (same seed => bitwise-identical coordinates).
Dataset generate(const GeneratorSpec& spec);

// CSV: comma separated, '.' decimal point, one point per row. save_csv
// prefixes a '#' metadata comment (family, seed, ...) for generated data;
// load_csv skips '#' lines (restoring that metadata when present) and an
// optional non-numeric header row.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& dataset, const std::string& path);

}  // namespace kselect
