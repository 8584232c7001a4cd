#pragma once

#include <cstddef>
#include <functional>

namespace infoflow {

// Worker count: INFOFLOW_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Callers write
// results into slot i so output order never depends on scheduling. The first
// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace infoflow
