#pragma once

#include <cstddef>
#include <functional>

namespace pcub {

// Worker count: hardware concurrency, capped by the PCUB_THREADS environment variable.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. The first exception
// thrown by any body is rethrown after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace pcub
