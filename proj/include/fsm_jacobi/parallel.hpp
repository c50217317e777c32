#pragma once

#include <cstddef>
#include <functional>

namespace fsm_jacobi {

/// Worker count: hardware concurrency capped by the FSM_JACOBI_THREADS
/// environment variable (>= 1).
unsigned worker_count();

/// Runs fn(i) for i in [0, count) on the worker pool; blocks until done.
/// Work items must be independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace fsm_jacobi
