#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tenkit/matrix.hpp"

namespace tenkit {

// Dense matrix building blocks used by the factor engines and the test
// oracles. All kernels are single-threaded internally; independent calls
// may run on different threads.

struct QrFactors {
  Matrix q;        // m x n, orthonormal columns
  Matrix r_upper;  // n x n, upper triangular, nonnegative diagonal
};

// Householder reduced QR of an m x n matrix with m >= n. Rank deficiency is
// permitted (r_upper may carry a near-zero diagonal); the sign convention
// makes every diagonal entry of r_upper nonnegative.
QrFactors reduced_qr(const Matrix& a);

// Solves g * X = b for symmetric positive definite g via Cholesky.
// A pivot at or below 1e-13 times the largest diagonal entry of g aborts
// with SingularGramError: the system is singular to working precision,
// which in the ALS context means the requested rank exceeds the numerical
// rank of the iterate.
Matrix spd_solve(const Matrix& g, const Matrix& b);

struct SpectrumReport {
  // Singular values (or eigenvalues, for sym_eig) in descending order.
  std::vector<double> values;
  std::optional<Matrix> left_vectors;
  std::optional<Matrix> right_vectors;
};

// Thin (economy) SVD a = U diag(values) V^T with k = min(rows, cols)
// columns. Householder bidiagonalization followed by implicit-shift
// Golub-Kahan steps; tall inputs are QR-preconditioned first and wide
// inputs are handled by transposition. Vector signs are fixed by making
// the largest-magnitude entry of each left vector positive.
// Throws NoConvergenceError after 100 * min(rows, cols) implicit-shift
// steps without deflation.
SpectrumReport dense_svd(const Matrix& a, bool want_vectors);

// Leading k eigenpairs of a symmetric matrix, eigenvalues descending,
// eigenvectors orthonormal with the same sign convention as dense_svd.
// Householder tridiagonalization + implicit-shift QL with accumulation.
SpectrumReport sym_eig(const Matrix& g, std::size_t k);

}  // namespace tenkit
