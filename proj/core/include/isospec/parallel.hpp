#pragma once

#include <cstddef>
#include <functional>

namespace isospec {

// Worker count: min(hardware_concurrency, ISOSPEC_THREADS) with a floor of 1.
// ISOSPEC_THREADS caps parallelism process-wide.
int worker_count();

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on n, never on the worker count, so callers
// that combine per-chunk results in chunk order get identical output for any
// thread count.
void parallel_for_chunks(std::size_t n, std::size_t chunk_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace isospec
