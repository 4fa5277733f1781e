#pragma once

#include <cstddef>
#include <functional>

namespace orlizono {

/// Worker count: ORLIZONO_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Each
/// index is processed exactly once; callers write results into per-index
/// slots so the outcome never depends on scheduling. If any call throws,
/// the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace orlizono
