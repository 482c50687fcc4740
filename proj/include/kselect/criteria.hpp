#pragma once

#include <map>
#include <string>

namespace kselect {

// Outcome of one selection criterion over an SSE profile: a per-k score
// curve (keys are k; absent where the formula is undefined, e.g. boundary k
// or truncated tails), the selected k, and optional quality flags.
//
//   unclustered - the criterion itself signals no better-than-chance
//                 structure in the data.
//   unstable    - the score curve had to be truncated/skipped somewhere or
//                 the selection is known to fluctuate (seed sensitivity).
struct CriterionResult {
  std::string name;
  std::map<int, double> scores;
  int selected_k = 0;
  bool unclustered = false;
  bool unstable = false;
  std::string note;  // human-readable explanation when a flag is set
};

// Key of the largest/smallest score; ties go to the lowest k (map order).
int argmax_score(const std::map<int, double>& scores);
int argmin_score(const std::map<int, double>& scores);

}  // namespace kselect
