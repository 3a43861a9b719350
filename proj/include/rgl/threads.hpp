#pragma once
#include <cstddef>
#include <functional>

namespace rgl {

// Worker count: RGL_THREADS env var caps it, 0 or unset means one per core.
std::size_t thread_budget();

// Runs fn(i) for i in [0, n) across the thread budget. Callers must write
// only to per-index slots; index order within a worker is ascending, so any
// budget yields identical results.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rgl
