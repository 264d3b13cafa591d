#pragma once

#include <cstddef>

namespace tenkit {

// Fibers per chunk in the deterministic parallel reductions of the
// contraction kernels. Partial results are combined in ascending chunk
// order, so outputs are bitwise identical for any thread count.
inline constexpr std::size_t kFiberChunk = 1024;

// Elements per chunk for scalar reductions (norms, dot products).
inline constexpr std::size_t kScalarChunk = 4096;

// Sets the worker-thread count for the parallel kernels. No-op when built
// without OpenMP. Values < 1 are clamped to 1.
void set_threads(int n);

// Current worker-thread count (1 when built without OpenMP).
int max_threads();

}  // namespace tenkit
