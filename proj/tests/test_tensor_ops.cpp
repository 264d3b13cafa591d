#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tenkit/errors.hpp"
#include "tenkit/parallel.hpp"
#include "tenkit/reference.hpp"
#include "tenkit/tensor_ops.hpp"

using tenkit::DenseTensor;
using tenkit::Matrix;
using tenkit::Shape;
using testutil::bitwise_equal;
using testutil::counting_tensor;
using testutil::max_abs_diff;
using testutil::random_matrix;
using testutil::random_orthonormal;
using testutil::random_tensor;
using testutil::rel_diff;

namespace {

// Shapes exercised by the oracle comparisons, order 1 through 5.
const std::vector<std::vector<std::size_t>> kOracleShapes = {
    {7}, {6, 8}, {3, 4, 5}, {4, 3, 2, 5}, {3, 2, 4, 2, 3}};

Matrix from_rows(std::size_t rows, std::size_t cols,
                 const std::vector<double>& row_major) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = row_major[i * cols + j];
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("tensor_ops") {
  TEST_CASE("matricize of the counting 2x2x2 tensor") {
    DenseTensor t = counting_tensor({2, 2, 2});

    Matrix m1 = tenkit::matricize(t, 1);
    CHECK(bitwise_equal(m1, from_rows(2, 4, {1, 3, 5, 7, 2, 4, 6, 8})));

    Matrix m2 = tenkit::matricize(t, 2);
    CHECK(bitwise_equal(m2, from_rows(2, 4, {1, 2, 5, 6, 3, 4, 7, 8})));

    Matrix m3 = tenkit::matricize(t, 3);
    CHECK(bitwise_equal(m3, from_rows(2, 4, {1, 2, 3, 4, 5, 6, 7, 8})));
  }

  TEST_CASE("matricize agrees with the reference column map") {
    for (const auto& dims : kOracleShapes) {
      DenseTensor t = random_tensor(dims, 11 + dims.size());
      for (std::size_t mode = 1; mode <= dims.size(); ++mode) {
        CAPTURE(dims.size());
        CAPTURE(mode);
        CHECK(bitwise_equal(tenkit::matricize(t, mode),
                            tenkit::ref::matricize(t, mode)));
      }
    }
  }

  TEST_CASE("matricize of an order-1 tensor is a column") {
    DenseTensor t = counting_tensor({5});
    Matrix m = tenkit::matricize(t, 1);
    CHECK(m.rows() == 5);
    CHECK(m.cols() == 1);
    CHECK(m(4, 0) == 5.0);
  }

  TEST_CASE("matricize rejects an out-of-range mode") {
    DenseTensor t = counting_tensor({2, 2, 2});
    CHECK_THROWS_AS(tenkit::matricize(t, 0), tenkit::InvalidModeError);
    CHECK_THROWS_AS(tenkit::matricize(t, 4), tenkit::InvalidModeError);
  }

  TEST_CASE("tensorize inverts matricize bitwise") {
    for (const auto& dims : kOracleShapes) {
      DenseTensor t = random_tensor(dims, 23 + dims.size());
      for (std::size_t mode = 1; mode <= dims.size(); ++mode) {
        DenseTensor back =
            tenkit::tensorize(tenkit::matricize(t, mode), mode, t.shape());
        CAPTURE(mode);
        CHECK(bitwise_equal(back, t));
      }
    }
  }

  TEST_CASE("tensorize of a literal unfolding") {
    Matrix m1 = from_rows(2, 4, {1, 3, 5, 7, 2, 4, 6, 8});
    DenseTensor t = tenkit::tensorize(m1, 1, Shape({2, 2, 2}));
    CHECK(bitwise_equal(t, counting_tensor({2, 2, 2})));

    Matrix scalar(1, 1, {42.0});
    DenseTensor s = tenkit::tensorize(scalar, 1, Shape({1, 1, 1}));
    CHECK(s.values()[0] == 42.0);
  }

  TEST_CASE("tensorize rejects non-conforming dimensions") {
    Matrix m(3, 4);
    CHECK_THROWS_AS(tenkit::tensorize(m, 1, Shape({2, 2, 2})),
                    tenkit::DimensionMismatchError);
    CHECK_THROWS_AS(tenkit::tensorize(m, 2, Shape({4, 3, 2})),
                    tenkit::DimensionMismatchError);
  }

  TEST_CASE("mode_n_product with the identity is a bitwise copy") {
    DenseTensor t = random_tensor({4, 5, 3}, 7);
    for (std::size_t mode = 1; mode <= 3; ++mode) {
      Matrix id = Matrix::identity(t.shape().extent(mode));
      CHECK(bitwise_equal(tenkit::mode_n_product(t, id, mode), t));
    }
  }

  TEST_CASE("mode-1 contraction with a row of ones sums fibers") {
    DenseTensor t = counting_tensor({2, 2, 2});
    Matrix ones(1, 2, {1.0, 1.0});
    DenseTensor out = tenkit::mode_n_product(t, ones, 1);
    CHECK(out.shape() == Shape({1, 2, 2}));
    CHECK(out.values() == std::vector<double>{3, 7, 11, 15});
  }

  TEST_CASE("mode_n_product commutes with matricization") {
    DenseTensor t = random_tensor({3, 4, 5}, 31);
    for (std::size_t mode = 1; mode <= 3; ++mode) {
      Matrix u = random_matrix(2, t.shape().extent(mode), 40 + mode);
      DenseTensor prod = tenkit::mode_n_product(t, u, mode);
      Matrix lhs = tenkit::matricize(prod, mode);
      Matrix rhs = tenkit::ref::matmul(u, tenkit::ref::matricize(t, mode));
      CHECK(max_abs_diff(lhs, rhs) <= 1e-13);
    }
  }

  TEST_CASE("mode_n_product agrees with the elementwise reference") {
    for (const auto& dims : kOracleShapes) {
      DenseTensor t = random_tensor(dims, 53 + dims.size());
      for (std::size_t mode = 1; mode <= dims.size(); ++mode) {
        Matrix u = random_matrix(3, t.shape().extent(mode), 60 + mode);
        DenseTensor fast = tenkit::mode_n_product(t, u, mode);
        DenseTensor slow = tenkit::ref::mode_n_product(t, u, mode);
        CAPTURE(mode);
        CHECK(max_abs_diff(fast, slow) <= 1e-13);
      }
    }
  }

  TEST_CASE("mode_n_product rejects non-conforming operands") {
    DenseTensor t = random_tensor({3, 4, 5}, 1);
    Matrix bad(2, 3);
    CHECK_THROWS_AS(tenkit::mode_n_product(t, bad, 2),
                    tenkit::DimensionMismatchError);
    CHECK_THROWS_AS(tenkit::mode_n_product(t, bad, 9),
                    tenkit::InvalidModeError);
  }

  TEST_CASE("multi-mode products commute across modes") {
    DenseTensor t = random_tensor({4, 5, 6}, 77);
    Matrix u2 = random_matrix(3, 5, 78);
    Matrix u3 = random_matrix(2, 6, 79);

    DenseTensor ab =
        tenkit::mode_n_product(tenkit::mode_n_product(t, u2, 2), u3, 3);
    DenseTensor ba =
        tenkit::mode_n_product(tenkit::mode_n_product(t, u3, 3), u2, 2);
    CHECK(tenkit::relative_error(ab, ba) <= 1e-13);

    DenseTensor multi =
        tenkit::multi_mode_product(t, {{u3, 3}, {u2, 2}});
    CHECK(tenkit::relative_error(ab, multi) <= 1e-13);
  }

  TEST_CASE("multi_mode_product rejects duplicate modes") {
    DenseTensor t = random_tensor({4, 5, 6}, 3);
    Matrix u = random_matrix(2, 5, 4);
    CHECK_THROWS_AS(tenkit::multi_mode_product(t, {{u, 2}, {u, 2}}),
                    tenkit::InvalidModeError);
  }

  TEST_CASE("unfold_times agrees with the explicit unfolding") {
    for (const auto& dims : kOracleShapes) {
      DenseTensor t = random_tensor(dims, 101 + dims.size());
      for (std::size_t mode = 1; mode <= dims.size(); ++mode) {
        std::size_t cols = t.size() / t.shape().extent(mode);
        Matrix m = random_matrix(cols, 3, 110 + mode);
        Matrix fast = tenkit::unfold_times(t, mode, m);
        Matrix slow = tenkit::ref::unfold_times(t, mode, m);
        CAPTURE(mode);
        CHECK(rel_diff(slow, fast) <= 1e-13);
      }
    }
  }

  TEST_CASE("unfold_t_times agrees with the explicit unfolding") {
    for (const auto& dims : kOracleShapes) {
      DenseTensor t = random_tensor(dims, 131 + dims.size());
      for (std::size_t mode = 1; mode <= dims.size(); ++mode) {
        Matrix m = random_matrix(t.shape().extent(mode), 3, 140 + mode);
        Matrix fast = tenkit::unfold_t_times(t, mode, m);
        Matrix slow = tenkit::ref::unfold_t_times(t, mode, m);
        CAPTURE(mode);
        CHECK(rel_diff(slow, fast) <= 1e-13);
      }
    }
  }

  TEST_CASE("mode_gram matches the unfolding Gram matrix") {
    for (const auto& dims : kOracleShapes) {
      DenseTensor t = random_tensor(dims, 151 + dims.size());
      for (std::size_t mode = 1; mode <= dims.size(); ++mode) {
        Matrix a = tenkit::ref::matricize(t, mode);
        Matrix oracle = tenkit::ref::matmul(a, tenkit::transpose(a));
        Matrix fast = tenkit::mode_gram(t, mode);
        CAPTURE(mode);
        CHECK(rel_diff(oracle, fast) <= 1e-13);
        // Symmetry must be exact by construction.
        for (std::size_t i = 0; i < fast.rows(); ++i) {
          for (std::size_t j = 0; j < i; ++j) {
            CHECK(fast(i, j) == fast(j, i));
          }
        }
      }
    }
  }

  TEST_CASE("frobenius_norm on frozen examples") {
    DenseTensor ones(Shape({2, 2, 2}), std::vector<double>(8, 1.0));
    CHECK(tenkit::frobenius_norm(ones) == doctest::Approx(std::sqrt(8.0)));

    DenseTensor t = counting_tensor({2, 2, 2});
    CHECK(tenkit::frobenius_norm(t) ==
          doctest::Approx(std::sqrt(204.0)).epsilon(1e-14));

    DenseTensor zero(Shape({3, 3}));
    CHECK(tenkit::frobenius_norm(zero) == 0.0);
  }

  TEST_CASE("frobenius_norm is invariant under matricization") {
    DenseTensor t = random_tensor({5, 6, 7}, 171);
    double tn = tenkit::frobenius_norm(t);
    CHECK(tn == doctest::Approx(tenkit::ref::frobenius_norm(t)).epsilon(1e-13));
    for (std::size_t mode = 1; mode <= 3; ++mode) {
      double mn = tenkit::frobenius_norm(tenkit::matricize(t, mode));
      CHECK(tn == doctest::Approx(mn).epsilon(1e-13));
    }
  }

  TEST_CASE("relative_error on frozen examples") {
    Shape shape({3, 2});
    std::vector<double> a_data = {3, 0, 0, 0, 0, 0};
    std::vector<double> b_data = {3, 0, 0, 0, 0, 1};
    DenseTensor a(shape, a_data);
    DenseTensor b(shape, b_data);
    CHECK(tenkit::relative_error(a, a) == 0.0);
    CHECK(tenkit::relative_error(a, b) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    std::vector<double> twice = a_data;
    for (double& x : twice) x *= 2.0;
    DenseTensor doubled(shape, twice);
    CHECK(tenkit::relative_error(a, doubled) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("relative_error conformance and zero-reference guards") {
    DenseTensor a = random_tensor({3, 4}, 5);
    DenseTensor b = random_tensor({4, 3}, 5);
    CHECK_THROWS_AS(tenkit::relative_error(a, b),
                    tenkit::DimensionMismatchError);
    DenseTensor zero(Shape({3, 4}));
    CHECK_THROWS_AS(tenkit::relative_error(zero, a),
                    tenkit::ZeroReferenceError);
  }

  TEST_CASE("reconstruct of a rank-one Tucker tensor") {
    // Core = 2, factors e_1 in each of three modes: the reconstruction has
    // a single nonzero entry at the origin.
    DenseTensor core(Shape({1, 1, 1}), {2.0});
    Matrix e1(3, 1, {1.0, 0.0, 0.0});
    tenkit::TuckerTensor tk{core, {e1, e1, e1}, Shape({3, 3, 3})};
    CHECK(tk.max_orthonormality_defect() <= 1e-15);
    DenseTensor full = tenkit::reconstruct(tk);
    CHECK(full.shape() == Shape({3, 3, 3}));
    CHECK(full.values()[0] == 2.0);
    double rest = 0.0;
    for (std::size_t i = 1; i < full.size(); ++i)
      rest += std::abs(full.values()[i]);
    CHECK(rest == 0.0);
  }

  TEST_CASE("reconstruct round-trips an orthonormal Tucker model") {
    DenseTensor core = random_tensor({2, 3, 2}, 200);
    std::vector<Matrix> factors = {random_orthonormal(6, 2, 201),
                                   random_orthonormal(7, 3, 202),
                                   random_orthonormal(5, 2, 203)};
    tenkit::TuckerTensor tk{core, factors, Shape({6, 7, 5})};
    DenseTensor full = tenkit::reconstruct(tk);

    // Contracting back with the transposed factors recovers the core.
    DenseTensor back = tenkit::multi_mode_product(
        full, {{tenkit::transpose(factors[0]), 1},
               {tenkit::transpose(factors[1]), 2},
               {tenkit::transpose(factors[2]), 3}});
    CHECK(tenkit::relative_error(core, back) <= 1e-12);
    CHECK(tk.max_orthonormality_defect() <= 1e-14);
  }

  TEST_CASE("reconstruct rejects non-conformal factor lists") {
    DenseTensor core = random_tensor({2, 2}, 9);
    Matrix u = random_orthonormal(5, 2, 10);
    tenkit::TuckerTensor missing{core, {u}, Shape({5, 5})};
    CHECK_THROWS_AS(tenkit::reconstruct(missing),
                    tenkit::DimensionMismatchError);
  }

  TEST_CASE("orthonormality defect detects a perturbed factor") {
    Matrix u = random_orthonormal(6, 3, 55);
    u(0, 0) += 1e-6;
    tenkit::TuckerTensor tk{random_tensor({3, 3}, 56),
                            {u, random_orthonormal(6, 3, 57)},
                            Shape({6, 6})};
    CHECK(tk.max_orthonormality_defect() > 1e-8);
  }

  TEST_CASE("kernel outputs are bitwise invariant to the thread count") {
    DenseTensor t = random_tensor({7, 9, 11}, 301);
    std::size_t cols = t.size() / t.shape().extent(2);
    Matrix m = random_matrix(cols, 4, 302);
    Matrix mt = random_matrix(9, 4, 303);
    Matrix u = random_matrix(4, 9, 304);

    tenkit::set_threads(1);
    Matrix ut1 = tenkit::unfold_times(t, 2, m);
    Matrix utt1 = tenkit::unfold_t_times(t, 2, mt);
    Matrix g1 = tenkit::mode_gram(t, 2);
    DenseTensor p1 = tenkit::mode_n_product(t, u, 2);
    double n1 = tenkit::frobenius_norm(t);
    Matrix mat1 = tenkit::matricize(t, 2);

    tenkit::set_threads(4);
    CHECK(bitwise_equal(ut1, tenkit::unfold_times(t, 2, m)));
    CHECK(bitwise_equal(utt1, tenkit::unfold_t_times(t, 2, mt)));
    CHECK(bitwise_equal(g1, tenkit::mode_gram(t, 2)));
    CHECK(bitwise_equal(p1, tenkit::mode_n_product(t, u, 2)));
    CHECK(n1 == tenkit::frobenius_norm(t));
    CHECK(bitwise_equal(mat1, tenkit::matricize(t, 2)));
    tenkit::set_threads(1);
  }
}
