#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tenkit/als.hpp"
#include "tenkit/shape.hpp"
#include "tenkit/tensor_ops.hpp"

namespace tenkit {

// Truncated Tucker decomposition drivers with pluggable per-mode factor
// engines, in two flavors: "t" computes every factor from the original
// tensor; "st" shrinks a working copy after each mode so later modes get
// progressively cheaper.

struct FactorEngine {
  enum class Kind { kSvd, kEig, kAls };
  Kind kind = Kind::kSvd;
  AlsConfig als;  // meaningful for kAls only

  static FactorEngine svd() { return {Kind::kSvd, {}}; }
  static FactorEngine eig() { return {Kind::kEig, {}}; }
  static FactorEngine with_als(AlsConfig cfg) { return {Kind::kAls, cfg}; }
};

struct ModeOrder {
  std::vector<std::size_t> order;  // permutation of 1..N
};

struct ModeReport {
  std::size_t mode = 0;
  double seconds = 0.0;  // factor engine + working-tensor shrink
  std::optional<AlsReport> als;
};

struct DecompositionReport {
  std::vector<ModeReport> per_mode;  // in processing order
  // ||t - reconstruct||_F / ||t||_F, evaluated outside the timed region.
  double relative_residual = 0.0;
  double seconds = 0.0;  // factor + core computation, excluding I/O
};

// Truncated HOSVD: per mode independently, U^(n) spans the leading R_n
// left singular directions of A_(n) — exactly for the Svd engine (SVD of
// the unfolding) and Eig engine (eigenvectors of the Gram matrix
// A_(n) A_(n)^T), approximately for the Als engine (orthonormalized
// converged left ALS factor). Core = t contracted with every U^(n)T.
// When want_singular_vectors is set with the Als engine, the basis is
// rotated onto singular-vector directions via recover_singular_vectors.
// Without it, Als factors are an orthonormal basis of the dominant
// subspace, not individual singular vectors.
std::pair<TuckerTensor, DecompositionReport> t_hosvd(
    const DenseTensor& t, const Truncation& trunc, const FactorEngine& engine,
    bool want_singular_vectors = false);

// Sequentially truncated HOSVD over the given mode order (std::nullopt =
// automatic order from select_order). Per mode, the factor comes from the
// current working tensor B, then B shrinks:
//   Svd: B_(n) <- diag(sigma) V^T (the projected unfolding, directly),
//   Eig: B <- B x_n U^(n)T,
//   Als: B_(n) <- R_hat R^T, where L = Q_hat R_hat is the reduced QR of the
//        converged left factor — equal to Q_hat^T B_(n) up to roundoff
//        because the converged pair satisfies L R^T = proj_span(L) B_(n).
// The final working tensor is the core.
std::pair<TuckerTensor, DecompositionReport> st_hosvd(
    const DenseTensor& t, const Truncation& trunc,
    const std::optional<ModeOrder>& order, const FactorEngine& engine);

// Processing order that minimizes the sequential-truncation cost model:
// ascending rank, ties broken by ascending mode index. (Derived for
// near-equal extents; for strongly unequal extents it remains the default
// but is a heuristic.)
ModeOrder select_order(const Truncation& trunc, const Shape& shape);

// Rotates an orthonormal basis q of the dominant mode subspace onto the
// leading left singular vectors of the projected unfolding q^T A_(mode):
// returns q * U where U collects the left singular vectors of q^T A_(mode).
Matrix recover_singular_vectors(const DenseTensor& t, std::size_t mode,
                                const Matrix& q);

}  // namespace tenkit
