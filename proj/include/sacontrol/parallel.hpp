#pragma once

#include <cstddef>
#include <functional>

namespace sacontrol {

// Worker count from SACONTROL_THREADS, else hardware concurrency (>= 1).
std::size_t default_thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = default).
// Indices are split into contiguous blocks; fn must only write to slot i.
// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t threads = 0);

}  // namespace sacontrol
