#pragma once

#include <functional>

namespace cdsxva {

// Number of worker threads. Controlled by the CDSXVA_WORKERS environment
// variable; affects wall time only, never results.
int worker_count();

// Runs fn(i) for i in [0, n) on the worker pool. Work is split into
// contiguous chunks; fn must only write to state owned by index i.
// Exceptions from workers are rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace cdsxva
