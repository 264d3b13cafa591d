#include "tenkit/reference.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tenkit/errors.hpp"

namespace tenkit::ref {

namespace {

// Advances a 0-based multi-index odometer-style (first mode fastest).
bool next_index(std::vector<std::size_t>& idx,
                const std::vector<std::size_t>& dims) {
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// 0-based column of the mode-n unfolding for multi-index idx, from the
// 1-based map j = 1 + sum_{k != mode} (i_k - 1) * J_k with
// J_k = prod_{m < k, m != mode} I_m.
std::size_t unfold_column(const std::vector<std::size_t>& idx,
                          const std::vector<std::size_t>& dims,
                          std::size_t mode0) {
  std::size_t col = 0;
  std::size_t jk = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k == mode0) continue;
    col += idx[k] * jk;
    jk *= dims[k];
  }
  return col;
}

}  // namespace

Matrix matricize(const DenseTensor& t, std::size_t mode) {
  const std::vector<std::size_t>& dims = t.shape().dims();
  const std::size_t extent = t.shape().extent(mode);
  const std::size_t mode0 = mode - 1;
  Matrix out(extent, t.size() / extent);
  std::vector<std::size_t> idx(dims.size(), 0);
  do {
    out(idx[mode0], unfold_column(idx, dims, mode0)) = t.at(idx);
  } while (next_index(idx, dims));
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatchError("ref::matmul: inner dimensions " +
                                 std::to_string(a.cols()) + " vs " +
                                 std::to_string(b.rows()));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < a.cols(); ++p) acc += a(i, p) * b(p, j);
      c(i, j) = acc;
    }
  }
  return c;
}

Matrix unfold_times(const DenseTensor& t, std::size_t mode, const Matrix& m) {
  return ref::matmul(ref::matricize(t, mode), m);
}

Matrix unfold_t_times(const DenseTensor& t, std::size_t mode,
                      const Matrix& m) {
  Matrix a = matricize(t, mode);
  if (m.rows() != a.rows()) {
    throw DimensionMismatchError("ref::unfold_t_times: m has " +
                                 std::to_string(m.rows()) +
                                 " rows, unfolding has " +
                                 std::to_string(a.rows()));
  }
  Matrix out(a.cols(), m.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, j) * m(i, c);
      out(j, c) = acc;
    }
  }
  return out;
}

DenseTensor mode_n_product(const DenseTensor& t, const Matrix& u,
                           std::size_t mode) {
  const std::vector<std::size_t>& dims = t.shape().dims();
  const std::size_t mode0 = mode - 1;
  if (u.cols() != dims[mode0]) {
    throw DimensionMismatchError("ref::mode_n_product: factor has " +
                                 std::to_string(u.cols()) +
                                 " columns, mode extent is " +
                                 std::to_string(dims[mode0]));
  }
  std::vector<std::size_t> out_dims = dims;
  out_dims[mode0] = u.rows();
  DenseTensor out{Shape(out_dims)};
  std::vector<std::size_t> idx(out_dims.size(), 0);
  do {
    std::vector<std::size_t> src_idx = idx;
    double acc = 0.0;
    for (std::size_t i = 0; i < dims[mode0]; ++i) {
      src_idx[mode0] = i;
      acc += t.at(src_idx) * u(idx[mode0], i);
    }
    out.at(idx) = acc;
  } while (next_index(idx, out_dims));
  return out;
}

double frobenius_norm(const DenseTensor& t) {
  double acc = 0.0;
  const double* p = t.data();
  for (std::size_t i = 0; i < t.size(); ++i) acc += p[i] * p[i];
  return std::sqrt(acc);
}

double factor_residual(const Matrix& a, const Matrix& l, const Matrix& r) {
  if (l.rows() != a.rows() || r.rows() != a.cols() || l.cols() != r.cols()) {
    throw DimensionMismatchError("ref::factor_residual: incompatible shapes");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double fit = 0.0;
      for (std::size_t c = 0; c < l.cols(); ++c) fit += l(i, c) * r(j, c);
      const double d = a(i, j) - fit;
      acc += d * d;
    }
  }
  return std::sqrt(acc);
}

}  // namespace tenkit::ref
