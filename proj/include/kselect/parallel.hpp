#pragma once

#include <cstddef>
#include <functional>

namespace kselect {

// Number of worker threads to use: min(hardware concurrency, KSELECT_THREADS)
// when the environment variable is set to a positive integer, at least 1.
std::size_t thread_budget();

// Runs fn(0..count-1), possibly on several threads. Job indices are handed
// out dynamically but each index runs exactly once; callers must write
// results into per-index slots and perform any reduction afterwards in index
// order, which keeps every result bitwise independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace kselect
