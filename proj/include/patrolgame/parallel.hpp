#pragma once

#include <cstddef>
#include <functional>

namespace patrolgame::parallel {

// Caps the worker count used by library loops; 0 restores the hardware default.
void set_max_threads(std::size_t n);
std::size_t max_threads();

// Runs body(begin, end) over disjoint chunks of [0, n). Each index is handled by
// exactly one call, so writes to per-index slots need no locking and results do
// not depend on the schedule. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace patrolgame::parallel
