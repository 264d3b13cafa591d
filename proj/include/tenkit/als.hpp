#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tenkit/matrix.hpp"
#include "tenkit/tensor.hpp"

namespace tenkit {

// Alternating least squares for the low-rank approximation A_(mode) ~ L R^T,
// built entirely on the unfolding-free contraction primitives.

struct AlsConfig {
  double eta = 1e-4;       // consecutive-residual stopping tolerance
  int max_iters = 50;      // sweep cap
  std::uint64_t seed = 0;  // randomized-range initializer seed
  // When set, used as L_0 instead of the randomized-range initializer.
  std::optional<Matrix> init;
};

enum class AlsStatus { kConverged, kMaxItersReached };

struct AlsReport {
  int iterations = 0;                    // sweeps performed
  std::vector<double> residual_history;  // ||A_(mode) - L_k R_k^T||_F per sweep
  AlsStatus status = AlsStatus::kConverged;
  // Last consecutive-residual gap divided by the reference norm ||t||_F.
  double achieved_eta = 0.0;
};

struct FactorPair {
  Matrix l;  // I_mode x r
  Matrix r;  // (prod of other extents) x r
};

// Randomized-range initializer: draws S ((prod of other extents) x r) with
// entries uniform on [0,1) in storage order from the seeded stream, then
// returns Q from the reduced QR of A_(mode) * S. Columns are orthonormal
// and span a subset of the unfolding's column space.
// Throws RankTooLargeError (r out of 1..I_mode) or DegenerateInitError
// (rank collapse: some |R_jj| <= 1e-13 * max |R_ii|).
Matrix als_init(const DenseTensor& t, std::size_t mode, std::size_t r,
                std::uint64_t seed);

// One full sweep from the current left factor l:
//   R <- unfold_t_times(t, mode, l) * (l^T l)^{-1}      (right update)
//   L <- unfold_times(t, mode, R) * (R^T R)^{-1}        (left update)
// The returned residual is evaluated after the right update by the closed
// form sqrt(max(0, ||t||_F^2 - trace((L^T L)(R^T R)))), the point where the
// identity is exact. The returned pair carries the updated L and the R
// computed within the sweep.
std::pair<FactorPair, double> als_sweep(const DenseTensor& t, std::size_t mode,
                                        const Matrix& l);

// Full ALS driver: initializes L (randomized range or cfg.init), sweeps
// until the consecutive-residual change satisfies
// |res_k - res_{k+1}| <= eta * ||t||_F or max_iters is reached.
//
// On return the pair is consistent: r is the exact least-squares solve
// against the returned l (the stop test runs right after the right update,
// before the left update that would desynchronize them). This is what the
// sequentially-truncated driver's core shortcut relies on.
// SingularGramError from the normal equations is surfaced as
// RankTooLargeError naming the mode.
std::pair<FactorPair, AlsReport> als_low_rank(const DenseTensor& t,
                                              std::size_t mode, std::size_t r,
                                              const AlsConfig& cfg);

}  // namespace tenkit
