#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace opschur {

// Process-wide worker count for the heavy quadrature / sampling loops.
// Results are required to be bitwise independent of it: loops are split into
// fixed-size chunks, partial sums are stored per chunk and reduced in chunk
// order, so only the scheduling changes with the thread count.
void set_worker_threads(int n);
int worker_threads();

inline constexpr std::size_t kChunk = 4096;

// sum over i in [0,n) of values produced by fn(i), chunk-deterministic.
double chunked_sum(std::size_t n, const std::function<double(std::size_t)>& fn);

}  // namespace opschur
