#pragma once

#include <cstddef>
#include <functional>

namespace loewner {

/// Worker cap: LOEWNER_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Indices are
/// handed out dynamically; results must be written to per-index slots. The
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace loewner
