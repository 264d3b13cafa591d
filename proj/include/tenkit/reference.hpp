#pragma once

#include <cstddef>

#include "tenkit/matrix.hpp"
#include "tenkit/tensor.hpp"

namespace tenkit::ref {

// Serial reference implementations: straight textbook loops over explicit
// index maps, kept deliberately independent of the chunked/parallel kernels
// in tensor_ops. The tests validate the fast paths against these, and
// bench_kernels compares their speed.

// Mode-n unfolding built by enumerating every multi-index and placing it
// via the column formula j = 1 + sum_{k != mode} (i_k - 1) * J_k,
// J_k = prod_{m < k, m != mode} I_m (all 1-based).
Matrix matricize(const DenseTensor& t, std::size_t mode);

// Plain triple-loop matrix product.
Matrix matmul(const Matrix& a, const Matrix& b);

// A_(mode) * m and A_(mode)^T * m through the explicit unfolding.
Matrix unfold_times(const DenseTensor& t, std::size_t mode, const Matrix& m);
Matrix unfold_t_times(const DenseTensor& t, std::size_t mode, const Matrix& m);

// Elementwise mode-n product: B(..., j, ...) = sum_i A(..., i, ...) u(j, i).
DenseTensor mode_n_product(const DenseTensor& t, const Matrix& u,
                           std::size_t mode);

// Left-to-right sum of squares, no chunking.
double frobenius_norm(const DenseTensor& t);

// ||a - l * r^T||_F computed elementwise.
double factor_residual(const Matrix& a, const Matrix& l, const Matrix& r);

}  // namespace tenkit::ref
