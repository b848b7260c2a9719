#pragma once

#include <cstddef>
#include <functional>

namespace viag {

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to per-index slots by the body; completion order is unspecified
/// but the output layout is index-ordered, so results are deterministic.
/// If any body throws, the exception from the lowest failing index is
/// rethrown after all workers join.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& body);

/// std::thread::hardware_concurrency() clamped to at least 1.
unsigned default_jobs();

}  // namespace viag
