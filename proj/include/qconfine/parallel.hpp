#pragma once

#include <cstddef>
#include <functional>

namespace qconfine {

/// Worker cap: QCONFINE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. If any call
/// throws, the exception from the lowest index is rethrown after all workers
/// finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qconfine
