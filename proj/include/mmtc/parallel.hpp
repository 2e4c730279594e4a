#pragma once

#include <cstddef>
#include <functional>

namespace mmtc {

// Worker count: MMTC_AGG_THREADS when set, else hardware parallelism.
// set_worker_count(0) restores the environment/hardware default.
unsigned worker_count();
void set_worker_count(unsigned n);

// Runs f(i) for i in [0, count) on the worker pool.  Each index must write
// only its own output slot; iteration order is unspecified, so determinism
// comes from per-index state, never from accumulation order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

}  // namespace mmtc
