#include "tenkit/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tenkit/errors.hpp"
#include "tenkit/parallel.hpp"

namespace tenkit {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatchError("Matrix: data length " +
                                 std::to_string(data_.size()) +
                                 " != " + std::to_string(rows_ * cols_));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      t(j, i) = a(i, j);
    }
  }
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatchError("matmul: " + std::to_string(a.cols()) +
                                 " inner vs " + std::to_string(b.rows()));
  }
  Matrix c(a.rows(), b.cols());
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  // Row blocks are independent (each output entry accumulates serially over
  // the inner index), so the parallel split cannot change results.
  const std::int64_t blocks = static_cast<std::int64_t>((m + 255) / 256);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    const std::size_t i0 = static_cast<std::size_t>(blk) * 256;
    const std::size_t i1 = std::min(m, i0 + 256);
    for (std::size_t j = 0; j < n; ++j) {
      double* cc = c.data() + j * m;
      for (std::size_t p = 0; p < k; ++p) {
        const double bja = b(p, j);
        if (bja == 0.0) continue;
        const double* ac = a.data() + p * m;
        for (std::size_t i = i0; i < i1; ++i) {
          cc[i] += ac[i] * bja;
        }
      }
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatchError("matmul_tn: " + std::to_string(a.rows()) +
                                 " inner vs " + std::to_string(b.rows()));
  }
  Matrix c(a.cols(), b.cols());
  const std::size_t k = a.rows();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const double* bc = b.data() + j * k;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double* ac = a.data() + i * k;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += ac[p] * bc[p];
      c(i, j) = acc;
    }
  }
  return c;
}

Matrix gram(const Matrix& a) {
  const std::size_t rows = a.rows(), r = a.cols();
  const std::size_t chunk = kFiberChunk;
  const std::size_t nchunks = rows == 0 ? 0 : (rows + chunk - 1) / chunk;
  std::vector<double> partials(nchunks * r * r, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * chunk;
    const std::size_t hi = std::min(rows, lo + chunk);
    double* part = partials.data() + static_cast<std::size_t>(ci) * r * r;
    for (std::size_t j = 0; j < r; ++j) {
      const double* cj = a.data() + j * rows;
      for (std::size_t i = 0; i <= j; ++i) {
        const double* ci2 = a.data() + i * rows;
        double acc = 0.0;
        for (std::size_t p = lo; p < hi; ++p) acc += ci2[p] * cj[p];
        part[i + j * r] = acc;
      }
    }
  }
  // Combine in ascending chunk order; fill the lower triangle by symmetry.
  Matrix g(r, r);
  for (std::size_t ci = 0; ci < nchunks; ++ci) {
    const double* part = partials.data() + ci * r * r;
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        g(i, j) += part[i + j * r];
      }
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = j + 1; i < r; ++i) {
      g(i, j) = g(j, i);
    }
  }
  return g;
}

double frobenius_norm(const Matrix& a) {
  const double* x = a.data();
  const std::size_t n = a.rows() * a.cols();
  const std::size_t chunk = kScalarChunk;
  const std::size_t nchunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<double> partials(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += x[i] * x[i];
    partials[static_cast<std::size_t>(ci)] = acc;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return std::sqrt(total);
}

}  // namespace tenkit
