// Python bindings for the k-selection core: dataset generation, SSE profile
// construction, criterion evaluation and the comparison table. The module is
// deliberately small — it mirrors the CLI surface with plain dicts and lists
// so results are easy to feed into pandas/matplotlib.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kselect/dataset.hpp"
#include "kselect/profile.hpp"
#include "kselect/report.hpp"
#include "kselect/table.hpp"

namespace py = pybind11;
using namespace kselect;

namespace {

Dataset dataset_from_points(const std::vector<std::vector<double>>& points) {
  if (points.empty())
    throw std::invalid_argument("dataset needs at least one point");
  const std::size_t d = points.front().size();
  if (d == 0) throw std::invalid_argument("points need at least one coordinate");
  std::vector<double> coords;
  coords.reserve(points.size() * d);
  for (const std::vector<double>& point : points) {
    if (point.size() != d)
      throw std::invalid_argument("all points must have the same dimension");
    coords.insert(coords.end(), point.begin(), point.end());
  }
  return Dataset(std::move(coords), points.size(), d);
}

std::vector<std::vector<double>> points_of(const Dataset& dataset) {
  std::vector<std::vector<double>> points(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto view = dataset.point(i);
    points[i].assign(view.begin(), view.end());
  }
  return points;
}

EvalOptions options_from_args(std::optional<double> jump_power,
                              double kneedle_sensitivity, double pham_threshold,
                              double reduction_threshold, int gap_b,
                              std::optional<std::uint64_t> gap_seed) {
  EvalOptions options;
  options.jump_power = jump_power;
  options.kneedle_sensitivity = kneedle_sensitivity;
  options.pham_threshold = pham_threshold;
  options.reduction_threshold = reduction_threshold;
  options.gap_b = gap_b;
  options.gap_seed = gap_seed;
  return options;
}

py::dict result_to_dict(const CriterionResult& result) {
  py::dict out;
  out["name"] = result.name;
  out["selected_k"] = result.selected_k;
  out["scores"] = result.scores;
  out["unclustered"] = result.unclustered;
  out["unstable"] = result.unstable;
  out["note"] = result.note;
  return out;
}

py::dict report_to_dict(const SelectionReport& report) {
  py::dict out;
  out["n"] = report.n;
  out["d"] = report.d;
  out["k_min"] = report.k_min;
  out["k_max"] = report.k_max;
  out["restarts"] = report.restarts;
  out["master_seed"] = report.master_seed;
  out["true_k"] = report.true_k;
  out["dataset_label"] = report.dataset_label;
  py::list criteria;
  for (const CriterionResult& result : report.criteria)
    criteria.append(result_to_dict(result));
  out["criteria"] = std::move(criteria);
  return out;
}

}  // namespace

PYBIND11_MODULE(_kselect, m) {
  m.doc() = "k-means SSE profiles and k-selection criteria (native core)";
  m.attr("__version__") = "0.1.0";

  py::class_<Dataset>(m, "Dataset", "Immutable n x d point table.")
      .def(py::init(&dataset_from_points), py::arg("points"),
           "Builds a dataset from a list of equal-length coordinate lists.")
      .def_property_readonly("n", &Dataset::size)
      .def_property_readonly("d", &Dataset::dim)
      .def("points", &points_of, "Coordinates as a list of per-point lists.")
      .def_property_readonly("family",
                             [](const Dataset& dataset) -> py::object {
                               if (!dataset.meta()) return py::none();
                               return py::str(to_string(dataset.meta()->family));
                             })
      .def_property_readonly("true_k",
                             [](const Dataset& dataset) -> py::object {
                               if (!dataset.meta()) return py::none();
                               return py::int_(dataset.meta()->true_k);
                             })
      .def("__repr__", [](const Dataset& dataset) {
        return "<kselect.Dataset n=" + std::to_string(dataset.size()) +
               " d=" + std::to_string(dataset.dim()) + ">";
      });

  py::class_<SSEProfile>(m, "Profile",
                         "Best-of-restarts SSE curve over a k range.")
      .def_property_readonly("k_min",
                             [](const SSEProfile& p) { return p.k_min; })
      .def_property_readonly("k_max",
                             [](const SSEProfile& p) { return p.k_max; })
      .def_property_readonly("n", [](const SSEProfile& p) { return p.n; })
      .def_property_readonly("d", [](const SSEProfile& p) { return p.d; })
      .def_property_readonly("restarts",
                             [](const SSEProfile& p) { return p.restarts; })
      .def_property_readonly("master_seed",
                             [](const SSEProfile& p) { return p.master_seed; })
      .def_property_readonly(
          "has_assignments",
          [](const SSEProfile& p) { return p.has_assignments; })
      .def("sse",
           [](const SSEProfile& profile) {
             std::map<int, double> curve;
             for (const ProfileEntry& entry : profile.entries)
               curve[entry.k] = entry.sse;
             return curve;
           },
           "The SSE curve as a {k: sse} dict.")
      .def("truncated", &SSEProfile::truncated, py::arg("k_max"),
           "Prefix copy over [k_min, k_max]; identical to a direct build "
           "with the smaller range.")
      .def("__repr__", [](const SSEProfile& profile) {
        return "<kselect.Profile k=" + std::to_string(profile.k_min) + ".." +
               std::to_string(profile.k_max) +
               " n=" + std::to_string(profile.n) + ">";
      });

  m.def(
      "generate",
      [](const std::string& family, std::size_t n, std::uint64_t seed,
         std::size_t dim, double blob_std, const std::string& placement) {
        GeneratorSpec spec;
        spec.family = family_from_string(family);
        spec.n = n;
        spec.seed = seed;
        spec.dim = dim;
        spec.blob_std = blob_std;
        spec.placement = placement_from_string(placement);
        return generate(spec);
      },
      py::arg("family"), py::arg("n"), py::arg("seed"), py::arg("dim") = 2,
      py::arg("blob_std") = 1.0, py::arg("placement") = "random",
      "Generates a dataset; families: well_separated, overlapping, "
      "many_blobs, uniform, normal. Deterministic per seed.");

  m.def(
      "build_profile",
      [](const Dataset& dataset, int k_min, int k_max, int restarts,
         std::uint64_t seed, bool keep_assignments) {
        return build_profile(dataset, k_min, k_max, restarts, seed,
                             keep_assignments);
      },
      py::arg("dataset"), py::arg("k_min"), py::arg("k_max"),
      py::arg("restarts"), py::arg("seed"), py::arg("keep_assignments") = true,
      "Runs best-of-restarts k-means for every k in [k_min, k_max] and "
      "returns the monotone-repaired SSE profile.");

  m.def("profile_from_sse", &make_profile_from_sse, py::arg("sse"),
        py::arg("k_min"), py::arg("n"), py::arg("d"),
        "Wraps a bare non-increasing SSE sequence as a profile (for worked "
        "examples; no assignments attached).");

  m.def("criteria",
        [] {
          std::vector<std::string> names;
          for (const CriterionSpec& spec : criterion_registry())
            names.push_back(spec.name);
          return names;
        },
        "All criterion names, in report order.");

  m.def(
      "evaluate",
      [](const std::string& name, const SSEProfile& profile,
         const Dataset* dataset, std::optional<double> jump_power,
         double kneedle_sensitivity, double pham_threshold,
         double reduction_threshold, int gap_b,
         std::optional<std::uint64_t> gap_seed) {
        const CriterionResult result = evaluate_criterion(
            name, profile, dataset,
            options_from_args(jump_power, kneedle_sensitivity, pham_threshold,
                              reduction_threshold, gap_b, gap_seed));
        return result_to_dict(result);
      },
      py::arg("name"), py::arg("profile"), py::arg("dataset") = nullptr,
      py::kw_only(), py::arg("jump_power") = py::none(),
      py::arg("kneedle_sensitivity") = 1.0, py::arg("pham_threshold") = 1.0,
      py::arg("reduction_threshold") = 1.0, py::arg("gap_b") = 10,
      py::arg("gap_seed") = py::none(),
      "Evaluates one criterion on a profile; criteria that read coordinates "
      "(gap, silhouette, ...) also need the dataset.");

  m.def(
      "make_report",
      [](const SSEProfile& profile, const Dataset* dataset,
         const std::string& criteria, std::optional<double> jump_power,
         double kneedle_sensitivity, double pham_threshold,
         double reduction_threshold, int gap_b,
         std::optional<std::uint64_t> gap_seed) {
        const SelectionReport report = make_report(
            profile, dataset, expand_criteria(criteria),
            options_from_args(jump_power, kneedle_sensitivity, pham_threshold,
                              reduction_threshold, gap_b, gap_seed));
        return report_to_dict(report);
      },
      py::arg("profile"), py::arg("dataset") = nullptr,
      py::arg("criteria") = "all", py::kw_only(),
      py::arg("jump_power") = py::none(), py::arg("kneedle_sensitivity") = 1.0,
      py::arg("pham_threshold") = 1.0, py::arg("reduction_threshold") = 1.0,
      py::arg("gap_b") = 10, py::arg("gap_seed") = py::none(),
      "Evaluates a comma-separated list of criteria (or 'all') and returns "
      "the full report as a dict.");

  m.def(
      "comparison_table",
      [](std::uint64_t seed, std::size_t n, int restarts, double blob_std,
         const std::string& placement, int gap_b, int gap_probes,
         std::optional<std::vector<std::pair<int, int>>> k_max_pairs) {
        TableOptions options;
        options.seed = seed;
        options.n = n;
        options.restarts = restarts;
        options.blob_std = blob_std;
        options.placement = placement_from_string(placement);
        options.gap_b = gap_b;
        options.gap_probes = gap_probes;
        if (k_max_pairs) options.k_max_pairs = *k_max_pairs;
        return render_comparison_table(build_comparison_table(options));
      },
      py::arg("seed") = 1, py::arg("n") = 1000, py::arg("restarts") = 10,
      py::arg("blob_std") = 1.0, py::arg("placement") = "grid",
      py::arg("gap_b") = 10, py::arg("gap_probes") = 3,
      py::arg("k_max_pairs") = py::none(),
      "Builds the five-dataset criterion-comparison table and returns it "
      "rendered as Markdown. k_max_pairs: five (small, large) pairs in "
      "family order.");
}
