#include "kselect/table.hpp"

#include <stdexcept>

#include "kselect/gap.hpp"
#include "kselect/io_util.hpp"
#include "kselect/rng.hpp"

namespace kselect {

namespace {

constexpr Family kTableFamilies[] = {Family::well_separated, Family::overlapping,
                                     Family::many_blobs, Family::uniform,
                                     Family::normal};

struct RowLabel {
  const char* name;
  const char* display;
  const char* section;  // set on the first row of each section
};

constexpr RowLabel kRowLabels[] = {
    {"jump", "Jump", "Elbow-based"},
    {"l_method", "L-Method", nullptr},
    {"l_method_iter", "L-Method (iter.)", nullptr},
    {"kneedle", "Kneedle", nullptr},
    {"curvature", "Curvature", nullptr},
    {"pyclustering", "Pyclustering", nullptr},
    {"shi_angles", "Shi angles", nullptr},
    {"auto_elbow", "AutoElbow", nullptr},
    {"marriott", "Marriott", "Variance-based"},
    {"vrc", "VRC", nullptr},
    {"kl_index", "K-L-Index", nullptr},
    {"pham", "Pham", nullptr},
    {"max_reduction", "Max reduction", nullptr},
    {"last_reduction", "Last reduction", nullptr},
    {"bic", "BIC", "Information-theory-based"},
    {"bic_fixed", "BIC (fixed)", nullptr},
    {"dunn", "Dunn", "Distance-based"},
    {"db", "DB", nullptr},
    {"silhouette", "Silhouette", nullptr},
    {"simplified_silhouette", "Simpl. Silhouette", nullptr},
    {"gap", "Gap statistic", "Simulation-based"},
};

std::string family_label(Family family) {
  switch (family) {
    case Family::well_separated: return "well sep.";
    case Family::overlapping: return "overlap.";
    case Family::many_blobs: return "many blobs";
    case Family::uniform: return "uniform";
    case Family::normal: return "normal";
  }
  return "?";
}

std::string cell_text(const CriterionResult& criterion) {
  std::string cell = std::to_string(criterion.selected_k);
  if (criterion.unclustered) cell += "†";   // dagger
  if (criterion.unstable) cell += "‡";      // double dagger
  return cell;
}

}  // namespace

const std::vector<std::string>& table_row_names() {
  static const std::vector<std::string> rows = [] {
    std::vector<std::string> names;
    for (const RowLabel& row : kRowLabels) names.emplace_back(row.name);
    return names;
  }();
  return rows;
}

ComparisonTable build_comparison_table(const TableOptions& options) {
  if (options.k_max_pairs.size() != std::size(kTableFamilies)) {
    throw std::invalid_argument("the table needs one k_max pair per dataset family");
  }
  if (options.gap_probes < 1) {
    throw std::invalid_argument("gap_probes must be at least 1");
  }

  EvalOptions eval;
  eval.gap_b = options.gap_b;

  // Every row except gap; gap is appended per column from the probe runs so
  // the small column can reuse the large column's reference clusterings.
  std::vector<std::string> plain_rows;
  for (const std::string& name : table_row_names()) {
    if (name != "gap") plain_rows.push_back(name);
  }

  ComparisonTable table;
  table.options = options;
  for (std::size_t f = 0; f < std::size(kTableFamilies); ++f) {
    const auto [k_small, k_large] = options.k_max_pairs[f];
    if (k_small < 4 || k_large < k_small) {
      throw std::invalid_argument("each k_max pair needs 4 <= small <= large");
    }

    GeneratorSpec spec;
    spec.family = kTableFamilies[f];
    spec.n = options.n;
    spec.seed = derive_seed(options.seed, f);
    spec.blob_std = options.blob_std;
    spec.placement = options.placement;
    const Dataset dataset = generate(spec);

    const std::uint64_t master = derive_seed(options.seed, f, 1);
    const SSEProfile profile_large =
        build_profile(dataset, 1, k_large, options.restarts, master, true);
    const SSEProfile profile_small = profile_large.truncated(k_small);

    // Probe 0 uses the seed make_report would derive, so the gap rows equal
    // a plain per-column evaluation; further probes only widen the
    // instability check.
    std::vector<GapResult> gaps_small;
    std::vector<GapResult> gaps_large;
    for (int p = 0; p < options.gap_probes; ++p) {
      GapResult gap = gap_statistic(dataset, profile_large, options.gap_b,
                                    derive_seed(master, kGapSeedTag,
                                                static_cast<std::uint64_t>(p)));
      gaps_small.push_back(truncated_gap(gap, k_small));
      gaps_large.push_back(std::move(gap));
    }
    mark_disagreeing_unstable(gaps_small);
    mark_disagreeing_unstable(gaps_large);

    for (const bool large : {false, true}) {
      const SSEProfile& profile = large ? profile_large : profile_small;
      TableColumn column;
      column.family = kTableFamilies[f];
      column.true_k = dataset.meta()->true_k;
      column.k_max = profile.k_max;
      column.report = make_report(profile, &dataset, plain_rows, eval);
      column.report.criteria.push_back(
          gap_criterion(large ? gaps_large.front() : gaps_small.front()));
      table.columns.push_back(std::move(column));
    }
  }
  return table;
}

std::string render_comparison_table(const ComparisonTable& table) {
  const TableOptions& options = table.options;
  std::string out;
  out += "# Selected k by criterion\n\n";
  out += "Settings: seed " + std::to_string(options.seed) + ", n = " +
         std::to_string(options.n) + " points per dataset, " +
         std::to_string(options.restarts) + " restarts, gap B = " +
         std::to_string(options.gap_b) + ", gap probe seeds = " +
         std::to_string(options.gap_probes) + ", blob std = " +
         format_double(options.blob_std) + ", many-blobs placement = " +
         to_string(options.placement) + ".\n\n";
  out += "† criterion reports the data as unclustered; ‡ selection is "
         "seed-sensitive or the score curve was truncated.\n\n";

  std::string header = "| Criterion |";
  std::string rule = "| --- |";
  std::string true_k_row = "| true k |";
  std::string max_k_row = "| max k |";
  for (const TableColumn& column : table.columns) {
    header += " " + family_label(column.family) + " |";
    rule += " --- |";
    true_k_row += " " + std::to_string(column.true_k) + " |";
    max_k_row += " " + std::to_string(column.k_max) + " |";
  }
  out += header + "\n" + rule + "\n" + true_k_row + "\n" + max_k_row + "\n";

  const std::string empty_cells = [&] {
    std::string cells;
    for (std::size_t i = 0; i < table.columns.size(); ++i) cells += "  |";
    return cells;
  }();

  for (const RowLabel& row : kRowLabels) {
    if (row.section != nullptr) {
      out += "| **" + std::string(row.section) + "** |" + empty_cells + "\n";
    }
    std::string line = "| " + std::string(row.display) + " |";
    for (const TableColumn& column : table.columns) {
      const CriterionResult* found = nullptr;
      for (const CriterionResult& criterion : column.report.criteria) {
        if (criterion.name == row.name) {
          found = &criterion;
          break;
        }
      }
      line += found != nullptr ? " " + cell_text(*found) + " |" : " - |";
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace kselect
