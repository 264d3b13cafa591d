#pragma once

#include <cstddef>
#include <vector>

namespace tenkit {

// Dense column-major matrix of doubles. Value type; immutable sharing
// across threads is safe once constructed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i + j * rows_];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i + j * rows_];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);

// a * b. Row-blocked and thread-parallel; every output entry is a serial
// accumulation in a fixed order, so results do not depend on thread count.
Matrix matmul(const Matrix& a, const Matrix& b);

// a^T * b (small outputs; serial).
Matrix matmul_tn(const Matrix& a, const Matrix& b);

// a^T * a, accumulated over fixed-size row chunks whose partial results
// combine in chunk order: bitwise identical for any thread count.
Matrix gram(const Matrix& a);

double frobenius_norm(const Matrix& a);

}  // namespace tenkit
