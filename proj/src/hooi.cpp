#include "tenkit/hooi.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tenkit/errors.hpp"
#include "tenkit/kernels.hpp"

namespace tenkit {

namespace {

void check_conformal(const DenseTensor& t, const Truncation& trunc,
                     const TuckerTensor& init) {
  const std::size_t n = t.shape().order();
  if (init.origin_shape != t.shape()) {
    throw DimensionMismatchError("hooi: init origin shape " +
                                 init.origin_shape.to_string() +
                                 " does not match tensor " +
                                 t.shape().to_string());
  }
  if (init.factors.size() != n || init.core.shape().order() != n) {
    throw DimensionMismatchError("hooi: init is not an order-" +
                                 std::to_string(n) + " decomposition");
  }
  for (std::size_t mode = 1; mode <= n; ++mode) {
    const Matrix& u = init.factors[mode - 1];
    const std::size_t rank = trunc.ranks[mode - 1];
    if (u.rows() != t.shape().extent(mode) || u.cols() != rank ||
        init.core.shape().extent(mode) != rank) {
      throw DimensionMismatchError("hooi: init factor for mode " +
                                   std::to_string(mode) +
                                   " does not match the truncation");
    }
  }
}

// Fit from the explicit reconstruction. The ||t||^2 - ||core||^2 shortcut
// loses every digit to cancellation near an exact fit, which would keep the
// |fit_k - fit_{k-1}| test from ever seeing a stable value; the direct
// residual costs one extra contraction chain per iteration and is exact to
// machine precision at the fixed point.
double explicit_fit(const DenseTensor& t, const TuckerTensor& tk) {
  return 1.0 - relative_error(t, reconstruct(tk));
}

}  // namespace

HooiResult hooi(const DenseTensor& t, const Truncation& trunc,
                const TuckerTensor& init, const HooiConfig& cfg) {
  trunc.validate(t.shape());
  check_conformal(t, trunc, init);
  const std::size_t n = t.shape().order();
  for (std::size_t mode = 1; mode <= n; ++mode) {
    std::size_t other = 1;
    for (std::size_t m = 1; m <= n; ++m) {
      if (m != mode) other *= trunc.ranks[m - 1];
    }
    if (trunc.ranks[mode - 1] > other) {
      throw RankTooLargeError(
          "hooi: mode " + std::to_string(mode) + " rank " +
          std::to_string(trunc.ranks[mode - 1]) +
          " exceeds the product of the other ranks (" + std::to_string(other) +
          ")");
    }
  }

  if (frobenius_norm(t) == 0.0) {
    throw ZeroReferenceError("hooi: input tensor has zero norm");
  }

  HooiResult result{init};
  result.fit_history.push_back(explicit_fit(t, result.tucker));

  const int max_iters = std::max(1, cfg.max_iters);
  for (int iter = 1; iter <= max_iters; ++iter) {
    DenseTensor core = result.tucker.core;  // replaced below
    for (std::size_t mode = 1; mode <= n; ++mode) {
      std::vector<ModeFactor> others;
      others.reserve(n - 1);
      for (std::size_t m = 1; m <= n; ++m) {
        if (m == mode) continue;
        others.push_back({transpose(result.tucker.factors[m - 1]), m});
      }
      const DenseTensor shrunk = multi_mode_product(t, others);
      SpectrumReport sr = dense_svd(matricize(shrunk, mode), true);
      Matrix u(shrunk.shape().extent(mode), trunc.ranks[mode - 1]);
      std::copy(sr.left_vectors->data(),
                sr.left_vectors->data() + u.rows() * u.cols(), u.data());
      result.tucker.factors[mode - 1] = std::move(u);
      if (mode == n) {
        core = mode_n_product(shrunk,
                              transpose(result.tucker.factors[mode - 1]), mode);
      }
    }
    result.tucker.core = std::move(core);
    result.iterations = iter;
    const double fit = explicit_fit(t, result.tucker);
    const double prev = result.fit_history.back();
    result.fit_history.push_back(fit);
    if (std::fabs(fit - prev) <= cfg.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace tenkit
