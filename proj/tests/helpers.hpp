#pragma once

// Shared builders and comparison helpers for the unit suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <vector>

#include "tenkit/kernels.hpp"
#include "tenkit/matrix.hpp"
#include "tenkit/rng.hpp"
#include "tenkit/tensor.hpp"
#include "tenkit/tensor_ops.hpp"

namespace testutil {

using tenkit::DenseTensor;
using tenkit::Matrix;
using tenkit::Shape;

// Tensor with entries 1, 2, ... in storage order (first index fastest).
inline DenseTensor counting_tensor(std::vector<std::size_t> dims) {
  Shape shape(std::move(dims));
  std::vector<double> data(shape.element_count());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = static_cast<double>(i + 1);
  }
  return DenseTensor{shape, std::move(data)};
}

inline DenseTensor random_tensor(std::vector<std::size_t> dims,
                                 std::uint64_t seed) {
  Shape shape(std::move(dims));
  auto eng = tenkit::seeded_engine(seed);
  std::vector<double> data(shape.element_count());
  for (double& x : data) x = tenkit::uniform_in(eng, -1.0, 1.0);
  return DenseTensor{shape, std::move(data)};
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols,
                            std::uint64_t seed) {
  auto eng = tenkit::seeded_engine(seed);
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      m(i, j) = tenkit::uniform_in(eng, -1.0, 1.0);
    }
  }
  return m;
}

inline Matrix random_gaussian(std::size_t rows, std::size_t cols,
                              std::uint64_t seed) {
  auto eng = tenkit::seeded_engine(seed);
  tenkit::GaussianStream gauss(eng);
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = gauss.next();
  }
  return m;
}

// Column-orthonormal matrix from the QR of a Gaussian draw (rows >= cols).
inline Matrix random_orthonormal(std::size_t rows, std::size_t cols,
                                 std::uint64_t seed) {
  return tenkit::reduced_qr(random_gaussian(rows, cols, seed)).q;
}

inline bool bitwise_equal(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  return a.empty() ||
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

inline bool bitwise_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         bitwise_equal(a.values(), b.values());
}

inline bool bitwise_equal(const DenseTensor& a, const DenseTensor& b) {
  return a.shape() == b.shape() && bitwise_equal(a.values(), b.values());
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double worst = a.size() == b.size()
                     ? 0.0
                     : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return max_abs_diff(a.values(), b.values());
}

inline double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
  if (a.shape() != b.shape()) {
    return std::numeric_limits<double>::infinity();
  }
  return max_abs_diff(a.values(), b.values());
}

// ||b - a||_F / ||a||_F for matrices (zero-safe: returns ||b||_F when a = 0).
inline double rel_diff(const Matrix& a, const Matrix& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    double d = b.values()[i] - a.values()[i];
    num += d * d;
  }
  double den = tenkit::frobenius_norm(a);
  return den > 0.0 ? std::sqrt(num) / den : std::sqrt(num);
}

// Frobenius distance between span(q) and span(u1) for column-orthonormal
// q and u1 with the same column count: ||(I - U1 U1^T) Q||_F.
inline double subspace_error(const Matrix& q, const Matrix& u1) {
  Matrix overlap = tenkit::matmul_tn(u1, q);
  double captured = tenkit::frobenius_norm(overlap);
  double total = static_cast<double>(q.cols());
  return std::sqrt(std::max(0.0, total - captured * captured));
}

// |cos angle| between two unit vectors stored as matrix columns.
inline double column_alignment(const Matrix& a, std::size_t ja,
                               const Matrix& b, std::size_t jb) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) dot += a(i, ja) * b(i, jb);
  return std::abs(dot);
}

}  // namespace testutil
