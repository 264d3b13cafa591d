#include "tenkit/als.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "tenkit/errors.hpp"
#include "tenkit/kernels.hpp"
#include "tenkit/rng.hpp"
#include "tenkit/tensor_ops.hpp"

namespace tenkit {

namespace {

double trace_product(const Matrix& a, const Matrix& b) {
  // trace(A B) for symmetric A, B of equal size.
  double acc = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, j) * b(i, j);
  }
  return acc;
}

// Right update: solves R (L^T L) = A_(mode)^T L for R. Returns R and the
// two Grams so the caller can evaluate the closed-form residual without
// extra passes.
struct RightUpdate {
  Matrix r;
  Matrix lt_l;
  Matrix rt_r;
};

RightUpdate right_update(const DenseTensor& t, std::size_t mode,
                         const Matrix& l) {
  RightUpdate out;
  out.lt_l = gram(l);
  const Matrix at_l = unfold_t_times(t, mode, l);
  out.r = transpose(spd_solve(out.lt_l, transpose(at_l)));
  out.rt_r = gram(out.r);
  return out;
}

Matrix left_update(const DenseTensor& t, std::size_t mode, const Matrix& r,
                   const Matrix& rt_r) {
  const Matrix a_r = unfold_times(t, mode, r);
  return transpose(spd_solve(rt_r, transpose(a_r)));
}

double closed_form_residual(double norm_sq, const Matrix& lt_l,
                            const Matrix& rt_r) {
  return std::sqrt(std::max(0.0, norm_sq - trace_product(lt_l, rt_r)));
}

}  // namespace

Matrix als_init(const DenseTensor& t, std::size_t mode, std::size_t r,
                std::uint64_t seed) {
  const std::size_t extent = t.shape().extent(mode);
  if (r < 1 || r > extent) {
    throw RankTooLargeError("mode " + std::to_string(mode) + ": rank " +
                            std::to_string(r) + " outside 1.." +
                            std::to_string(extent));
  }
  const std::size_t fibers = t.size() / extent;
  std::mt19937_64 eng = seeded_engine(seed, static_cast<std::uint32_t>(mode));
  Matrix s(fibers, r);
  double* sd = s.data();
  for (std::size_t i = 0; i < fibers * r; ++i) sd[i] = uniform01(eng);

  const Matrix y = unfold_times(t, mode, s);
  QrFactors qr = reduced_qr(y);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    max_diag = std::max(max_diag, std::fabs(qr.r_upper(i, i)));
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (std::fabs(qr.r_upper(i, i)) <= 1e-13 * max_diag || max_diag == 0.0) {
      throw DegenerateInitError(
          "als_init: randomized range collapsed at column " +
          std::to_string(i + 1) + " for mode " + std::to_string(mode));
    }
  }
  return std::move(qr.q);
}

std::pair<FactorPair, double> als_sweep(const DenseTensor& t, std::size_t mode,
                                        const Matrix& l) {
  const double norm = frobenius_norm(t);
  RightUpdate ru = right_update(t, mode, l);
  const double residual = closed_form_residual(norm * norm, ru.lt_l, ru.rt_r);
  Matrix l_next = left_update(t, mode, ru.r, ru.rt_r);
  return {FactorPair{std::move(l_next), std::move(ru.r)}, residual};
}

std::pair<FactorPair, AlsReport> als_low_rank(const DenseTensor& t,
                                              std::size_t mode, std::size_t r,
                                              const AlsConfig& cfg) {
  const std::size_t extent = t.shape().extent(mode);
  const double norm = frobenius_norm(t);
  if (norm == 0.0) {
    throw ZeroReferenceError("als_low_rank: input tensor has zero norm");
  }
  const double norm_sq = norm * norm;

  Matrix l;
  if (cfg.init.has_value()) {
    if (cfg.init->rows() != extent || cfg.init->cols() != r) {
      throw DimensionMismatchError(
          "als_low_rank: init is " + std::to_string(cfg.init->rows()) + "x" +
          std::to_string(cfg.init->cols()) + ", mode " + std::to_string(mode) +
          " needs " + std::to_string(extent) + "x" + std::to_string(r));
    }
    l = *cfg.init;
  } else {
    l = als_init(t, mode, r, cfg.seed);
  }

  AlsReport report;
  report.status = AlsStatus::kMaxItersReached;
  double prev_residual = norm;  // pre-iteration reference level
  const int max_iters = std::max(1, cfg.max_iters);

  for (int k = 1; k <= max_iters; ++k) {
    RightUpdate ru;
    try {
      ru = right_update(t, mode, l);
    } catch (const SingularGramError&) {
      throw RankTooLargeError("mode " + std::to_string(mode) +
                              ": gram matrix is singular, rank " +
                              std::to_string(r) +
                              " exceeds the numerical rank of the iterate");
    }
    const double residual = closed_form_residual(norm_sq, ru.lt_l, ru.rt_r);
    report.iterations = k;
    report.residual_history.push_back(residual);
    report.achieved_eta = std::fabs(prev_residual - residual) / norm;
    if (report.achieved_eta <= cfg.eta) {
      report.status = AlsStatus::kConverged;
      return {FactorPair{std::move(l), std::move(ru.r)}, std::move(report)};
    }
    if (k == max_iters) {
      // Keep the returned pair consistent: the final left update is
      // skipped so r remains the exact solve against the returned l.
      return {FactorPair{std::move(l), std::move(ru.r)}, std::move(report)};
    }
    try {
      l = left_update(t, mode, ru.r, ru.rt_r);
    } catch (const SingularGramError&) {
      throw RankTooLargeError("mode " + std::to_string(mode) +
                              ": gram matrix is singular, rank " +
                              std::to_string(r) +
                              " exceeds the numerical rank of the iterate");
    }
    prev_residual = residual;
  }
  // Unreachable: the loop always returns at k == max_iters.
  return {FactorPair{std::move(l), Matrix()}, std::move(report)};
}

}  // namespace tenkit
