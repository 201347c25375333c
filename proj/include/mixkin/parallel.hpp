#pragma once

#include <cstddef>
#include <functional>

namespace mixkin {

// Worker count: MIXKIN_THREADS env var caps it, 0/unset means hardware concurrency.
int max_threads();

// Static-chunk parallel loop over [0, n). body(begin, end, chunk_index) runs once per
// chunk; the partition depends only on n and the thread count, never on timing, so
// per-chunk accumulators merged in chunk order give deterministic results.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, int)>& body,
                     int threads = 0);

// Convenience element-wise form (disjoint writes only).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  int threads = 0);

} // namespace mixkin
