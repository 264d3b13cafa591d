#include "tenkit/hosvd.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tenkit/errors.hpp"
#include "tenkit/kernels.hpp"

namespace tenkit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Matrix leading_columns(const Matrix& m, std::size_t k) {
  Matrix out(m.rows(), k);
  std::copy(m.data(), m.data() + m.rows() * k, out.data());
  return out;
}

std::vector<std::size_t> checked_order(const std::optional<ModeOrder>& order,
                                       const Truncation& trunc,
                                       const Shape& shape) {
  if (!order.has_value()) return select_order(trunc, shape).order;
  const std::size_t n = shape.order();
  if (order->order.size() != n) {
    throw InvalidModeError("st_hosvd: order has " +
                           std::to_string(order->order.size()) +
                           " entries for an order-" + std::to_string(n) +
                           " tensor");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t mode : order->order) {
    if (mode < 1 || mode > n || seen[mode - 1]) {
      throw InvalidModeError("st_hosvd: order is not a permutation of 1.." +
                             std::to_string(n));
    }
    seen[mode - 1] = true;
  }
  return order->order;
}

}  // namespace

ModeOrder select_order(const Truncation& trunc, const Shape& shape) {
  trunc.validate(shape);
  std::vector<std::size_t> order(shape.order());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&trunc](std::size_t a, std::size_t b) {
                     return trunc.ranks[a - 1] < trunc.ranks[b - 1];
                   });
  return ModeOrder{std::move(order)};
}

Matrix recover_singular_vectors(const DenseTensor& t, std::size_t mode,
                                const Matrix& q) {
  // q^T A_(mode) shares its singular values with the projection of A onto
  // span(q); its left singular vectors express them in the q basis.
  const Matrix projected = transpose(unfold_t_times(t, mode, q));
  SpectrumReport sr = dense_svd(projected, true);
  return matmul(q, *sr.left_vectors);
}

std::pair<TuckerTensor, DecompositionReport> t_hosvd(
    const DenseTensor& t, const Truncation& trunc, const FactorEngine& engine,
    bool want_singular_vectors) {
  trunc.validate(t.shape());
  const std::size_t n = t.shape().order();

  DecompositionReport report;
  std::vector<Matrix> factors(n);
  const Clock::time_point total_start = Clock::now();

  for (std::size_t mode = 1; mode <= n; ++mode) {
    const std::size_t rank = trunc.ranks[mode - 1];
    ModeReport mr;
    mr.mode = mode;
    const Clock::time_point mode_start = Clock::now();
    switch (engine.kind) {
      case FactorEngine::Kind::kSvd: {
        SpectrumReport sr = dense_svd(matricize(t, mode), true);
        factors[mode - 1] = leading_columns(*sr.left_vectors, rank);
        break;
      }
      case FactorEngine::Kind::kEig: {
        SpectrumReport sr = sym_eig(mode_gram(t, mode), rank);
        factors[mode - 1] = std::move(*sr.left_vectors);
        break;
      }
      case FactorEngine::Kind::kAls: {
        auto [pair, als_report] = als_low_rank(t, mode, rank, engine.als);
        factors[mode - 1] = std::move(reduced_qr(pair.l).q);
        if (want_singular_vectors) {
          factors[mode - 1] =
              recover_singular_vectors(t, mode, factors[mode - 1]);
        }
        mr.als = std::move(als_report);
        break;
      }
    }
    mr.seconds = seconds_since(mode_start);
    report.per_mode.push_back(std::move(mr));
  }

  std::vector<ModeFactor> transposed;
  transposed.reserve(n);
  for (std::size_t mode = 1; mode <= n; ++mode) {
    transposed.push_back({transpose(factors[mode - 1]), mode});
  }
  TuckerTensor tucker{multi_mode_product(t, transposed), std::move(factors),
                      t.shape()};
  report.seconds = seconds_since(total_start);
  report.relative_residual = relative_error(t, reconstruct(tucker));
  return {std::move(tucker), std::move(report)};
}

std::pair<TuckerTensor, DecompositionReport> st_hosvd(
    const DenseTensor& t, const Truncation& trunc,
    const std::optional<ModeOrder>& order, const FactorEngine& engine) {
  trunc.validate(t.shape());
  const std::vector<std::size_t> processing =
      checked_order(order, trunc, t.shape());
  const std::size_t n = t.shape().order();

  DecompositionReport report;
  std::vector<Matrix> factors(n);
  const Clock::time_point total_start = Clock::now();
  DenseTensor working = t;

  for (std::size_t mode : processing) {
    const std::size_t rank = trunc.ranks[mode - 1];
    ModeReport mr;
    mr.mode = mode;
    const Clock::time_point mode_start = Clock::now();

    std::vector<std::size_t> shrunk_dims = working.shape().dims();
    shrunk_dims[mode - 1] = rank;
    const Shape shrunk{std::move(shrunk_dims)};

    switch (engine.kind) {
      case FactorEngine::Kind::kSvd: {
        SpectrumReport sr = dense_svd(matricize(working, mode), true);
        factors[mode - 1] = leading_columns(*sr.left_vectors, rank);
        // The projected unfolding U^T B_(mode) = diag(sigma) V^T is already
        // available from the factorization; no extra contraction needed.
        const Matrix& v = *sr.right_vectors;
        Matrix m(rank, v.rows());
        for (std::size_t j = 0; j < v.rows(); ++j) {
          for (std::size_t i = 0; i < rank; ++i) {
            m(i, j) = sr.values[i] * v(j, i);
          }
        }
        working = tensorize(m, mode, shrunk);
        break;
      }
      case FactorEngine::Kind::kEig: {
        SpectrumReport sr = sym_eig(mode_gram(working, mode), rank);
        factors[mode - 1] = std::move(*sr.left_vectors);
        working = mode_n_product(working, transpose(factors[mode - 1]), mode);
        break;
      }
      case FactorEngine::Kind::kAls: {
        auto [pair, als_report] = als_low_rank(working, mode, rank, engine.als);
        // L = Q_hat R_hat, and the converged pair satisfies
        // L R^T = proj_span(L) B_(mode), so Q_hat^T B_(mode) = R_hat R^T.
        QrFactors qr = reduced_qr(pair.l);
        factors[mode - 1] = std::move(qr.q);
        working = tensorize(matmul(qr.r_upper, transpose(pair.r)), mode, shrunk);
        mr.als = std::move(als_report);
        break;
      }
    }
    mr.seconds = seconds_since(mode_start);
    report.per_mode.push_back(std::move(mr));
  }

  TuckerTensor tucker{std::move(working), std::move(factors), t.shape()};
  report.seconds = seconds_since(total_start);
  report.relative_residual = relative_error(t, reconstruct(tucker));
  return {std::move(tucker), std::move(report)};
}

}  // namespace tenkit
