#pragma once

#include <cstddef>
#include <vector>

#include "tenkit/matrix.hpp"
#include "tenkit/tensor.hpp"

namespace tenkit {

// Mode-n matricization A_(n): the I_mode x (prod of the other extents)
// matrix whose column j flattens the remaining indices with the lowest mode
// fastest. For mode 1 the layout coincides with the flat storage, so the
// result is a straight copy with no permutation.
Matrix matricize(const DenseTensor& t, std::size_t mode);

// Inverse of matricize: tensorize(matricize(t, n), n, t.shape()) == t bitwise.
DenseTensor tensorize(const Matrix& m, std::size_t mode, const Shape& target);

// B = t x_mode u: contracts the mode's index against u's columns; the
// result replaces extent I_mode by u.rows().
DenseTensor mode_n_product(const DenseTensor& t, const Matrix& u,
                           std::size_t mode);

struct ModeFactor {
  Matrix factor;
  std::size_t mode;  // 1-based
};

// Applies mode_n_product for each listed factor, in ascending mode order
// (mode products along distinct modes commute, so the order only affects
// rounding). Modes must be distinct.
DenseTensor multi_mode_product(const DenseTensor& t,
                               const std::vector<ModeFactor>& factors);

// A_(mode) * m without materializing the unfolding: streams mode fibers in
// fixed chunks of kFiberChunk and combines chunk partials in ascending
// order, so the result is bitwise identical for any thread count.
Matrix unfold_times(const DenseTensor& t, std::size_t mode, const Matrix& m);

// A_(mode)^T * m without materializing the unfolding. Every output row is
// an independent fiber contraction (no cross-thread reduction), so results
// never depend on the thread count.
Matrix unfold_t_times(const DenseTensor& t, std::size_t mode, const Matrix& m);

// Gram matrix A_(mode) * A_(mode)^T (I_mode x I_mode), streamed over fibers
// with the same chunk-ordered deterministic reduction as unfold_times.
Matrix mode_gram(const DenseTensor& t, std::size_t mode);

// sqrt(sum of squares), accumulated over fixed-size chunks combined in
// chunk order (thread-count invariant).
double frobenius_norm(const DenseTensor& t);

// ||b - a||_F / ||a||_F.
double relative_error(const DenseTensor& a, const DenseTensor& b);

// Tucker representation: core of shape (R_1, ..., R_N) plus per-mode
// column-orthonormal factors I_n x R_n.
struct TuckerTensor {
  DenseTensor core;
  std::vector<Matrix> factors;
  Shape origin_shape;

  // Largest per-mode orthonormality defect ||U^T U - I||_F / R_n; the
  // decomposition drivers keep this at <= 1e-12.
  double max_orthonormality_defect() const;
};

// core x_1 U^(1) x_2 ... x_N U^(N); shape = origin_shape.
DenseTensor reconstruct(const TuckerTensor& tk);

}  // namespace tenkit
