// kselect: command-line surface for the k-selection toolkit.
//
// Subcommands: datagen (toy dataset CSVs), profile (SSE-over-k curves),
// select (criterion evaluation into a JSON report), table (five-dataset
// criterion comparison in Markdown), plotdata (curve CSVs).
//
// Exit codes: 0 success, 2 usage error (bad flags, malformed inputs,
// unknown names), 3 missing input (absent files, absent assignments),
// 1 internal error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kselect/dataset.hpp"
#include "kselect/gap.hpp"
#include "kselect/io_util.hpp"
#include "kselect/profile.hpp"
#include "kselect/report.hpp"
#include "kselect/table.hpp"
#include "kselect/variance.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMissingInput = 3;

// Shared knobs bound to CLI flags.
struct DatagenArgs {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 2;
  double blob_std = 1.0;
  std::string placement = "random";
  std::string out;
};

struct ProfileArgs {
  std::string in;
  int k_min = 1;
  int k_max = 0;
  int restarts = 10;
  std::uint64_t seed = 0;
  bool keep_assignments = false;
  std::string out;
};

struct SelectArgs {
  std::string profile;
  std::string data;
  std::string criteria;
  std::string out;
  int gap_b = 10;
  std::optional<std::uint64_t> gap_seed;
  std::optional<double> jump_power;
  double kneedle_sensitivity = 1.0;
  double pham_threshold = 1.0;
  double reduction_threshold = 1.0;
  std::size_t max_n = 20000;
  bool allow_subsample = false;
  std::uint64_t subsample_seed = 0;
};

struct TableArgs {
  std::uint64_t seed = 1;
  int restarts = 10;
  std::size_t n = 1000;
  double blob_std = 1.0;
  std::string placement = "grid";
  int gap_b = 10;
  int gap_probes = 3;
  std::string k_max_pairs;  // "10:25,10:25,50:100,10:25,10:25"
  std::string out;
};

struct PlotdataArgs {
  std::string profile;
  std::string kind;
  std::string out;
};

int require_readable(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    std::cerr << "error: input file not found: " << path << "\n";
    return kExitMissingInput;
  }
  return kExitOk;
}

int run_datagen(const DatagenArgs& args) {
  kselect::GeneratorSpec spec;
  spec.family = kselect::family_from_string(args.family);
  spec.n = args.n;
  spec.seed = args.seed;
  spec.dim = args.dim;
  spec.blob_std = args.blob_std;
  spec.placement = kselect::placement_from_string(args.placement);
  const kselect::Dataset dataset = kselect::generate(spec);
  kselect::save_csv(dataset, args.out);
  std::cout << "wrote " << dataset.size() << " points (" << dataset.dim()
            << "-d, family " << args.family << ") to " << args.out << "\n";
  return kExitOk;
}

int run_profile(const ProfileArgs& args) {
  if (const int code = require_readable(args.in); code != kExitOk) return code;
  const kselect::Dataset dataset = kselect::load_csv(args.in);
  if (args.k_max > static_cast<int>(dataset.size())) {
    std::cerr << "error: kmax (" << args.k_max << ") exceeds the number of points ("
              << dataset.size() << ")\n";
    return kExitUsage;
  }
  const kselect::SSEProfile profile =
      kselect::build_profile(dataset, args.k_min, args.k_max, args.restarts,
                             args.seed, args.keep_assignments);
  kselect::save_profile(profile, args.out);
  std::cout << "wrote SSE profile k = " << profile.k_min << ".." << profile.k_max
            << " (restarts " << profile.restarts << ", seed " << profile.master_seed
            << ") to " << args.out << "\n";
  return kExitOk;
}

int run_select(const SelectArgs& args) {
  const std::vector<std::string> names = kselect::expand_criteria(args.criteria);

  if (const int code = require_readable(args.profile); code != kExitOk) return code;
  const kselect::SSEProfile profile = kselect::load_profile(args.profile);

  std::optional<kselect::Dataset> dataset;
  if (!args.data.empty()) {
    if (const int code = require_readable(args.data); code != kExitOk) return code;
    dataset = kselect::load_csv(args.data);
  }

  // Collect every missing input across the requested criteria up front.
  std::vector<std::string> need_data;
  std::vector<std::string> need_assignments;
  for (const std::string& name : names) {
    const kselect::CriterionSpec& spec = kselect::criterion_spec(name);
    if (spec.needs_dataset && !dataset.has_value()) need_data.push_back(name);
    if (spec.needs_assignments && !profile.has_assignments) {
      need_assignments.push_back(name);
    }
  }
  if (!need_data.empty() || !need_assignments.empty()) {
    std::cerr << "error: missing inputs:\n";
    auto list = [](const std::vector<std::string>& items) {
      std::string joined;
      for (const std::string& item : items) {
        if (!joined.empty()) joined += ", ";
        joined += item;
      }
      return joined;
    };
    if (!need_data.empty()) {
      std::cerr << "  --data <data.csv> is required by: " << list(need_data) << "\n";
    }
    if (!need_assignments.empty()) {
      std::cerr << "  retained assignments (build the profile with --keep-assignments) "
                   "are required by: "
                << list(need_assignments) << "\n";
    }
    return kExitMissingInput;
  }

  kselect::EvalOptions options;
  options.jump_power = args.jump_power;
  options.kneedle_sensitivity = args.kneedle_sensitivity;
  options.pham_threshold = args.pham_threshold;
  options.reduction_threshold = args.reduction_threshold;
  options.gap_b = args.gap_b;
  options.gap_seed = args.gap_seed;
  options.distance.max_n = args.max_n;
  options.distance.allow_subsample = args.allow_subsample;
  options.distance.subsample_seed = args.subsample_seed;

  const kselect::SelectionReport report = kselect::make_report(
      profile, dataset.has_value() ? &*dataset : nullptr, names, options);
  kselect::save_report(report, args.out);

  for (const kselect::CriterionResult& criterion : report.criteria) {
    std::cout << criterion.name << ": k = " << criterion.selected_k;
    if (criterion.unclustered) std::cout << " [unclustered]";
    if (criterion.unstable) std::cout << " [unstable]";
    std::cout << "\n";
  }
  std::cout << "wrote report to " << args.out << "\n";
  return kExitOk;
}

std::vector<std::pair<int, int>> parse_k_max_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> pairs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("--kmax-pairs items must look like small:large");
    }
    pairs.emplace_back(static_cast<int>(kselect::parse_int(item.substr(0, colon))),
                       static_cast<int>(kselect::parse_int(item.substr(colon + 1))));
    start = end + 1;
    if (end == text.size()) break;
  }
  return pairs;
}

int run_table(const TableArgs& args) {
  kselect::TableOptions options;
  options.seed = args.seed;
  options.restarts = args.restarts;
  options.n = args.n;
  options.blob_std = args.blob_std;
  options.placement = kselect::placement_from_string(args.placement);
  options.gap_b = args.gap_b;
  options.gap_probes = args.gap_probes;
  if (!args.k_max_pairs.empty()) {
    options.k_max_pairs = parse_k_max_pairs(args.k_max_pairs);
  }
  const kselect::ComparisonTable table = kselect::build_comparison_table(options);
  kselect::atomic_write_file(args.out, kselect::render_comparison_table(table));
  std::cout << "wrote comparison table (" << table.columns.size() << " columns) to "
            << args.out << "\n";
  return kExitOk;
}

int run_plotdata(const PlotdataArgs& args) {
  if (const int code = require_readable(args.profile); code != kExitOk) return code;
  const kselect::SSEProfile profile = kselect::load_profile(args.profile);

  std::string out;
  out += "# kselect curve kind=" + args.kind +
         " master_seed=" + std::to_string(profile.master_seed) +
         " restarts=" + std::to_string(profile.restarts) + "\n";
  if (args.kind == "elbow") {
    out += "k,sse\n";
    for (int k = profile.k_min; k <= profile.k_max; ++k) {
      out += std::to_string(k) + "," + kselect::format_double(profile.sse_at(k)) + "\n";
    }
  } else if (args.kind == "reduction") {
    if (profile.k_min != 1) {
      std::cerr << "error: the reduction curve needs a profile starting at kmin = 1\n";
      return kExitUsage;
    }
    const kselect::ReductionCurve curve = kselect::reduction_curve(profile);
    out += "k,sse,sse_hat,ratio\n";
    for (const auto& [k, sse_hat] : curve.sse_hat) {
      out += std::to_string(k) + "," + kselect::format_double(profile.sse_at(k)) +
             "," + kselect::format_double(sse_hat) + "," +
             kselect::format_double(curve.ratio.at(k)) + "\n";
    }
  } else {
    std::cerr << "error: --kind must be elbow or reduction\n";
    return kExitUsage;
  }
  kselect::atomic_write_file(args.out, out);
  std::cout << "wrote " << args.kind << " curve to " << args.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-means SSE profiles and cluster-count selection criteria"};
  app.require_subcommand(1);

  DatagenArgs datagen;
  CLI::App* cmd_datagen = app.add_subcommand("datagen", "generate a toy dataset CSV");
  cmd_datagen->add_option("--family", datagen.family,
                          "well_separated|overlapping|many_blobs|uniform|normal")
      ->required();
  cmd_datagen->add_option("--n", datagen.n, "number of points")->required();
  cmd_datagen->add_option("--seed", datagen.seed, "generator seed")->required();
  cmd_datagen->add_option("--dim", datagen.dim, "dimensionality (default 2)");
  cmd_datagen->add_option("--blob-std", datagen.blob_std, "blob standard deviation");
  cmd_datagen->add_option("--placement", datagen.placement,
                          "many-blobs center layout: grid|random");
  cmd_datagen->add_option("--out", datagen.out, "output CSV path")->required();

  ProfileArgs profile;
  CLI::App* cmd_profile =
      app.add_subcommand("profile", "cluster a dataset over a k range");
  cmd_profile->add_option("--in", profile.in, "input CSV path")->required();
  cmd_profile->add_option("--kmin", profile.k_min, "smallest k (default 1)");
  cmd_profile->add_option("--kmax", profile.k_max, "largest k")->required();
  cmd_profile->add_option("--restarts", profile.restarts, "restarts per k (default 10)");
  cmd_profile->add_option("--seed", profile.seed, "master seed (default 0)");
  cmd_profile->add_flag("--keep-assignments", profile.keep_assignments,
                        "retain per-point cluster labels (needed by some criteria)");
  cmd_profile->add_option("--out", profile.out, "output JSON path")->required();

  SelectArgs select;
  CLI::App* cmd_select =
      app.add_subcommand("select", "apply selection criteria to a profile");
  cmd_select->add_option("--profile", select.profile, "profile JSON path")->required();
  cmd_select->add_option("--data", select.data, "dataset CSV (for data-dependent criteria)");
  cmd_select->add_option("--criteria", select.criteria, "'all' or a comma list")
      ->required();
  cmd_select->add_option("--out", select.out, "output report JSON path")->required();
  cmd_select->add_option("--gap-b", select.gap_b, "gap reference sets (default 10)");
  std::uint64_t gap_seed_raw = 0;
  CLI::Option* gap_seed_option =
      cmd_select->add_option("--gap-seed", gap_seed_raw,
                             "gap reference seed (default: derived from the profile)");
  double jump_power_raw = 0.0;
  CLI::Option* jump_power_option = cmd_select->add_option(
      "--jump-power", jump_power_raw, "jump transform power (default d/2)");
  cmd_select->add_option("--kneedle-sensitivity", select.kneedle_sensitivity,
                         "kneedle sensitivity (default 1.0)");
  cmd_select->add_option("--pham-threshold", select.pham_threshold,
                         "pham unclustered threshold (default 1.0)");
  cmd_select->add_option("--reduction-threshold", select.reduction_threshold,
                         "last-reduction ratio threshold (default 1.0)");
  cmd_select->add_option("--max-n", select.max_n,
                         "pairwise-distance size guard (default 20000)");
  cmd_select->add_flag("--allow-subsample", select.allow_subsample,
                       "subsample datasets above --max-n for distance criteria");
  cmd_select->add_option("--subsample-seed", select.subsample_seed,
                         "seed for the distance subsample");

  TableArgs table;
  CLI::App* cmd_table =
      app.add_subcommand("table", "regenerate the five-dataset criterion comparison");
  cmd_table->add_option("--seed", table.seed, "master seed (default 1)");
  cmd_table->add_option("--restarts", table.restarts, "restarts per k (default 10)");
  cmd_table->add_option("--n", table.n, "points per dataset (default 1000)");
  cmd_table->add_option("--blob-std", table.blob_std, "blob standard deviation");
  cmd_table->add_option("--placement", table.placement,
                        "many-blobs center layout: grid|random (default grid)");
  cmd_table->add_option("--gap-b", table.gap_b, "gap reference sets (default 10)");
  cmd_table->add_option("--gap-probes", table.gap_probes,
                        "gap stability probe seeds (default 3)");
  cmd_table->add_option("--kmax-pairs", table.k_max_pairs,
                        "five small:large pairs, e.g. 10:25,10:25,50:100,10:25,10:25");
  cmd_table->add_option("--out", table.out, "output Markdown path")->required();

  PlotdataArgs plotdata;
  CLI::App* cmd_plotdata =
      app.add_subcommand("plotdata", "export curve CSVs from a profile");
  cmd_plotdata->add_option("--profile", plotdata.profile, "profile JSON path")->required();
  cmd_plotdata->add_option("--kind", plotdata.kind, "elbow|reduction")->required();
  cmd_plotdata->add_option("--out", plotdata.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_datagen->parsed()) return run_datagen(datagen);
    if (cmd_profile->parsed()) return run_profile(profile);
    if (cmd_select->parsed()) {
      if (gap_seed_option->count() > 0) select.gap_seed = gap_seed_raw;
      if (jump_power_option->count() > 0) select.jump_power = jump_power_raw;
      return run_select(select);
    }
    if (cmd_table->parsed()) return run_table(table);
    if (cmd_plotdata->parsed()) return run_plotdata(plotdata);
  } catch (const kselect::MissingInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
