#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "uniformity_lab/summation.hpp"

namespace ulab {

/// Worker count used by parallel loops. Reads UNIFORMITY_LAB_THREADS once;
/// falls back to std::thread::hardware_concurrency().
std::size_t worker_count();

/// Overrides the worker count for the rest of the process (0 restores the
/// environment default).
void set_worker_count(std::size_t n);

/// Runs body(i) for i in [0, n_tasks). Calls made from inside a worker run
/// inline, so nested loops never oversubscribe.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& body);

/// Fixed chunk length for reductions. Partitioning never depends on the
/// thread count, which keeps every reduction bit-identical across runs.
inline constexpr std::int64_t kReduceChunk = 64;

/// Splits [lo, hi) into kReduceChunk-sized pieces, evaluates
/// chunk_fn(chunk_lo, chunk_hi) -> T for each (possibly in parallel) and
/// combines the partials by pairwise summation in index order.
template <class T, class ChunkFn>
T chunked_reduce(std::int64_t lo, std::int64_t hi, ChunkFn&& chunk_fn) {
  if (hi <= lo) return T{};
  const std::int64_t n_chunks = (hi - lo + kReduceChunk - 1) / kReduceChunk;
  std::vector<T> partials(static_cast<std::size_t>(n_chunks));
  parallel_for(static_cast<std::size_t>(n_chunks), [&](std::size_t c) {
    const std::int64_t a = lo + static_cast<std::int64_t>(c) * kReduceChunk;
    const std::int64_t b = a + kReduceChunk < hi ? a + kReduceChunk : hi;
    partials[c] = chunk_fn(a, b);
  });
  return pairwise_sum(partials);
}

}  // namespace ulab
