#pragma once

#include <cstdint>
#include <functional>

namespace tonguelock::par {

// Effective worker cap: explicit set_max_workers() wins, then the
// TONGUELOCK_THREADS environment variable, then hardware concurrency.
int max_workers();
void set_max_workers(int workers);

// Runs fn(i) for i in [0, n). Indices are split into contiguous blocks, one
// per worker; fn must only write to state owned by index i. Nested calls run
// sequentially, so callers may parallelize freely at the outermost level.
// Results must not depend on the worker count; keep reductions outside.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                  int workers = 0);

}  // namespace tonguelock::par
