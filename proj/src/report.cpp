#include "kselect/report.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kselect/elbow.hpp"
#include "kselect/gap.hpp"
#include "kselect/info.hpp"
#include "kselect/io_util.hpp"
#include "kselect/rng.hpp"
#include "kselect/variance.hpp"

namespace kselect {

namespace {

std::vector<CriterionSpec> build_registry() {
  // needs_dataset / needs_assignments per criterion. The information
  // criteria read only SSE and cluster sizes, but sizes come from retained
  // assignments, so they share the distance criteria's input contract.
  return {
      {"jump", false, false},
      {"l_method", false, false},
      {"l_method_iter", false, false},
      {"kneedle", false, false},
      {"curvature", false, false},
      {"pyclustering", false, false},
      {"shi_angles", false, false},
      {"auto_elbow", false, false},
      {"max_reduction", false, false},
      {"last_reduction", false, false},
      {"vrc", false, false},
      {"marriott", true, true},
      {"kl_index", false, false},
      {"pham", false, false},
      {"bic", true, true},
      {"bic_fixed", true, true},
      {"aic", true, true},
      {"dunn", true, true},
      {"db", true, true},
      {"silhouette", true, true},
      {"simplified_silhouette", true, true},
      {"gap", true, false},
  };
}

}  // namespace

const std::vector<CriterionSpec>& criterion_registry() {
  static const std::vector<CriterionSpec> registry = build_registry();
  return registry;
}

const CriterionSpec& criterion_spec(const std::string& name) {
  for (const CriterionSpec& spec : criterion_registry()) {
    if (spec.name == name) return spec;
  }
  throw std::invalid_argument("unknown criterion: " + name);
}

std::vector<std::string> expand_criteria(const std::string& spec) {
  std::vector<std::string> names;
  auto push_unique = [&names](const std::string& name) {
    for (const std::string& existing : names) {
      if (existing == name) return;
    }
    names.push_back(name);
  };

  std::string trimmed;
  std::vector<std::string> tokens;
  std::stringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto begin = token.find_first_not_of(" \t");
    const auto end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) continue;
    tokens.push_back(token.substr(begin, end - begin + 1));
  }
  if (tokens.empty()) throw std::invalid_argument("no criteria requested");

  for (const std::string& name : tokens) {
    if (name == "all") {
      for (const CriterionSpec& entry : criterion_registry()) push_unique(entry.name);
    } else {
      criterion_spec(name);  // validates
      push_unique(name);
    }
  }
  return names;
}

CriterionResult evaluate_criterion(const std::string& name,
                                   const SSEProfile& profile,
                                   const Dataset* dataset,
                                   const EvalOptions& options) {
  const CriterionSpec& spec = criterion_spec(name);
  std::string missing;
  if (spec.needs_dataset && dataset == nullptr) {
    missing += "dataset coordinates";
  }
  if (spec.needs_assignments && !profile.has_assignments) {
    if (!missing.empty()) missing += " and ";
    missing += "retained assignments";
  }
  if (!missing.empty()) {
    throw MissingInputError("criterion '" + name + "' requires " + missing);
  }
  if (dataset != nullptr && dataset->size() != profile.n) {
    throw std::invalid_argument("profile was built from a different dataset (size mismatch)");
  }

  if (name == "jump") return jump(profile, options.jump_power);
  if (name == "l_method") return l_method(profile, false);
  if (name == "l_method_iter") {
    CriterionResult result = l_method(profile, true);
    result.name = "l_method_iter";
    return result;
  }
  if (name == "kneedle") return kneedle(profile, options.kneedle_sensitivity);
  if (name == "curvature") return zhang_curvature(profile);
  if (name == "pyclustering") return pyclustering_elbow(profile);
  if (name == "shi_angles") return shi_angles(profile);
  if (name == "auto_elbow") return auto_elbow(profile);
  if (name == "max_reduction" || name == "last_reduction") {
    ReductionCurve curve = reduction_curve(profile);
    curve.threshold = options.reduction_threshold;
    return name == "max_reduction" ? select_max_reduction(curve)
                                   : select_last_reduction(curve);
  }
  if (name == "vrc") return vrc(profile);
  if (name == "marriott") return marriott(*dataset, profile);
  if (name == "kl_index") return krzanowski_lai(profile);
  if (name == "pham") return pham(profile, options.pham_threshold);
  if (name == "bic") return bic(profile, BicVariant::original, false);
  if (name == "bic_fixed") return bic(profile, BicVariant::fixed, false);
  if (name == "aic") return bic(profile, BicVariant::fixed, true);
  if (name == "dunn" || name == "db" || name == "silhouette" ||
      name == "simplified_silhouette") {
    DistanceIndex which = DistanceIndex::dunn;
    if (name == "db") which = DistanceIndex::davies_bouldin;
    if (name == "silhouette") which = DistanceIndex::silhouette;
    if (name == "simplified_silhouette") which = DistanceIndex::simplified_silhouette;
    return sweep_distance_criterion(*dataset, profile, which, options.distance);
  }
  if (name == "gap") {
    const std::uint64_t seed =
        options.gap_seed.value_or(derive_seed(profile.master_seed, kGapSeedTag));
    return gap_criterion(gap_statistic(*dataset, profile, options.gap_b, seed));
  }
  throw std::invalid_argument("unknown criterion: " + name);  // unreachable
}

SelectionReport make_report(const SSEProfile& profile, const Dataset* dataset,
                            const std::vector<std::string>& names,
                            const EvalOptions& options) {
  SelectionReport report;
  report.n = profile.n;
  report.d = profile.d;
  report.k_min = profile.k_min;
  report.k_max = profile.k_max;
  report.restarts = profile.restarts;
  report.master_seed = profile.master_seed;
  if (dataset != nullptr && dataset->meta().has_value()) {
    report.true_k = dataset->meta()->true_k;
    report.dataset_label = to_string(dataset->meta()->family);
  }
  std::set<std::string> seen;
  for (const std::string& name : names) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("criterion requested twice: " + name);
    }
    report.criteria.push_back(evaluate_criterion(name, profile, dataset, options));
  }
  return report;
}

namespace {

std::string score_value_to_json(double value) {
  if (std::isnan(value)) return "\"nan\"";
  if (std::isinf(value)) return value > 0 ? "\"inf\"" : "\"-inf\"";
  return format_double(value);
}

double score_value_from_json(const nlohmann::json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string& token = value.get_ref<const std::string&>();
    if (token == "inf") return std::numeric_limits<double>::infinity();
    if (token == "-inf") return -std::numeric_limits<double>::infinity();
    if (token == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("invalid score value in report JSON");
}

}  // namespace

std::string report_to_json(const SelectionReport& report) {
  std::string out;
  out += "{\n";
  out += "  \"n\": " + std::to_string(report.n) + ",\n";
  out += "  \"d\": " + std::to_string(report.d) + ",\n";
  out += "  \"k_min\": " + std::to_string(report.k_min) + ",\n";
  out += "  \"k_max\": " + std::to_string(report.k_max) + ",\n";
  out += "  \"restarts\": " + std::to_string(report.restarts) + ",\n";
  out += "  \"master_seed\": " + std::to_string(report.master_seed) + ",\n";
  if (report.true_k.has_value()) {
    out += "  \"true_k\": " + std::to_string(*report.true_k) + ",\n";
  }
  if (!report.dataset_label.empty()) {
    out += "  \"dataset_label\": \"" + json_escape(report.dataset_label) + "\",\n";
  }
  out += "  \"criteria\": [\n";
  for (std::size_t i = 0; i < report.criteria.size(); ++i) {
    const CriterionResult& criterion = report.criteria[i];
    out += "    {\"name\": \"" + json_escape(criterion.name) + "\"";
    out += ", \"selected_k\": " + std::to_string(criterion.selected_k);
    out += ", \"flags\": [";
    bool first_flag = true;
    if (criterion.unclustered) {
      out += "\"unclustered\"";
      first_flag = false;
    }
    if (criterion.unstable) {
      if (!first_flag) out += ", ";
      out += "\"unstable\"";
    }
    out += "]";
    if (!criterion.note.empty()) {
      out += ", \"note\": \"" + json_escape(criterion.note) + "\"";
    }
    out += ", \"scores\": {";
    bool first_score = true;
    for (const auto& [k, value] : criterion.scores) {
      if (!first_score) out += ", ";
      first_score = false;
      out += "\"" + std::to_string(k) + "\": " + score_value_to_json(value);
    }
    out += "}}";
    out += (i + 1 < report.criteria.size()) ? ",\n" : "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

SelectionReport report_from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    throw std::invalid_argument(std::string("invalid report JSON: ") + error.what());
  }
  if (!root.is_object()) throw std::invalid_argument("report JSON must be an object");

  SelectionReport report;
  try {
    report.n = root.at("n").get<std::size_t>();
    report.d = root.at("d").get<std::size_t>();
    report.k_min = root.at("k_min").get<int>();
    report.k_max = root.at("k_max").get<int>();
    report.restarts = root.at("restarts").get<int>();
    report.master_seed = root.at("master_seed").get<std::uint64_t>();
    if (root.contains("true_k")) report.true_k = root.at("true_k").get<int>();
    if (root.contains("dataset_label")) {
      report.dataset_label = root.at("dataset_label").get<std::string>();
    }
    std::set<std::string> seen;
    for (const nlohmann::json& entry : root.at("criteria")) {
      CriterionResult criterion;
      criterion.name = entry.at("name").get<std::string>();
      if (!seen.insert(criterion.name).second) {
        throw std::invalid_argument("duplicate criterion in report: " + criterion.name);
      }
      criterion.selected_k = entry.at("selected_k").get<int>();
      for (const nlohmann::json& flag : entry.at("flags")) {
        const std::string value = flag.get<std::string>();
        if (value == "unclustered") {
          criterion.unclustered = true;
        } else if (value == "unstable") {
          criterion.unstable = true;
        } else {
          throw std::invalid_argument("unknown flag in report: " + value);
        }
      }
      if (entry.contains("note")) criterion.note = entry.at("note").get<std::string>();
      for (const auto& [key, value] : entry.at("scores").items()) {
        criterion.scores[static_cast<int>(parse_int(key))] = score_value_from_json(value);
      }
      report.criteria.push_back(std::move(criterion));
    }
  } catch (const nlohmann::json::exception& error) {
    throw std::invalid_argument(std::string("invalid report JSON: ") + error.what());
  }
  return report;
}

void save_report(const SelectionReport& report, const std::string& path) {
  atomic_write_file(path, report_to_json(report));
}

SelectionReport load_report(const std::string& path) {
  return report_from_json(read_text_file(path));
}

}  // namespace kselect
