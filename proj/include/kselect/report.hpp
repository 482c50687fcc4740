#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kselect/criteria.hpp"
#include "kselect/dataset.hpp"
#include "kselect/distance.hpp"
#include "kselect/profile.hpp"

namespace kselect {

// Thrown when a criterion needs inputs (dataset coordinates, retained
// assignments) that were not supplied; the message names what is missing.
class MissingInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tuning knobs shared by every criterion evaluation.
struct EvalOptions {
  std::optional<double> jump_power;  // default inside jump(): d/2
  double kneedle_sensitivity = 1.0;
  double pham_threshold = 1.0;
  double reduction_threshold = 1.0;
  int gap_b = 10;
  // Reference-stream seed for the gap statistic; derived from the profile's
  // master seed when unset, so reports are deterministic per profile.
  std::optional<std::uint64_t> gap_seed;
  DistanceSweepOptions distance;
};

struct CriterionSpec {
  std::string name;
  bool needs_dataset = false;      // dataset coordinates required
  bool needs_assignments = false;  // profile must retain assignments
};

// All criteria, in the order "all" expands to (also the report/table row
// order).
const std::vector<CriterionSpec>& criterion_registry();

// Looks a criterion up by name; throws std::invalid_argument on unknown
// names.
const CriterionSpec& criterion_spec(const std::string& name);

// Expands "all" or a comma-separated list into ordered, duplicate-free
// criterion names (first occurrence wins). Unknown names throw
// std::invalid_argument naming the offender.
std::vector<std::string> expand_criteria(const std::string& spec);

// Evaluates one criterion. dataset may be null for criteria that work from
// the profile alone; passing null (or a profile without assignments) to a
// criterion that needs them throws MissingInputError.
CriterionResult evaluate_criterion(const std::string& name,
                                   const SSEProfile& profile,
                                   const Dataset* dataset,
                                   const EvalOptions& options = {});

// Machine form of one dataset/profile evaluation: every requested criterion
// exactly once, plus enough provenance (seeds, k range, restarts) to
// regenerate it.
struct SelectionReport {
  std::size_t n = 0;
  std::size_t d = 0;
  int k_min = 0;
  int k_max = 0;
  int restarts = 0;
  std::uint64_t master_seed = 0;
  std::optional<int> true_k;
  std::string dataset_label;  // family or file name; informational only
  std::vector<CriterionResult> criteria;
};

SelectionReport make_report(const SSEProfile& profile, const Dataset* dataset,
                            const std::vector<std::string>& names,
                            const EvalOptions& options = {});

// JSON serialization. Scores are emitted per k and omitted where undefined;
// non-finite scores are carried as the strings "inf"/"-inf"/"nan" so the
// round trip stays lossless.
std::string report_to_json(const SelectionReport& report);
SelectionReport report_from_json(const std::string& text);
void save_report(const SelectionReport& report, const std::string& path);
SelectionReport load_report(const std::string& path);

}  // namespace kselect
