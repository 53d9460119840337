#pragma once

#include <cstddef>
#include <functional>

namespace nw {

// Worker count from NW_THREADS (positive integer); falls back to the
// hardware concurrency when unset. Invalid values throw std::invalid_argument.
std::size_t worker_count();

// Runs body(i) for i in [0, n) on up to `workers` threads. Each index runs
// exactly once; the first exception thrown by any task is rethrown after all
// workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace nw
