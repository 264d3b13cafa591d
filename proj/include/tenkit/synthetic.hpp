#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tenkit/hosvd.hpp"
#include "tenkit/shape.hpp"
#include "tenkit/tensor.hpp"

namespace tenkit {

// Synthetic tensor models, spectral tail oracles, the flop-count cost
// model, and the error-bound checkers used by the test suites.

// Sum of `rank` random rank-one terms: per term, one Gaussian-then-
// normalized vector per mode (drawn mode 1 first), then a weight uniform
// on [lambda_min, lambda_max]; finally elementwise noise delta * E with
// standard Gaussian E in storage order. Fixed seed => bitwise identical.
struct CpSpec {
  std::vector<std::size_t> dims;
  std::size_t rank = 1;
  double lambda_min = 5.0;
  double lambda_max = 10.0;
  double noise_delta = 1e-4;
  std::uint64_t seed = 0;
};

// Random Tucker model: core entries uniform on [core_min, core_max) in
// storage order, factors orthonormal from reduced QR of per-mode Gaussian
// matrices (drawn after the core, mode 1 first), then noise as in CpSpec.
struct TuckerSpec {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;
  double core_min = 5.0;
  double core_max = 10.0;
  double noise_delta = 1e-4;
  std::uint64_t seed = 0;
};

struct SynthPair {
  DenseTensor noisy;  // base + delta * E; what gets decomposed
  DenseTensor base;   // noiseless model, kept for error scoring
};

SynthPair gen_cp(const CpSpec& spec);
SynthPair gen_tucker(const TuckerSpec& spec);

// Spectral tails: gamma_n = sum of the squared singular values of A_(n)
// beyond R_n, from a full dense SVD per mode.
struct GammaReport {
  std::vector<double> gamma;                 // per mode
  std::vector<std::vector<double>> spectra;  // full per-mode spectra
};

GammaReport gammas(const DenseTensor& t, const Truncation& trunc);

// Leading-order flop counts of the six decomposition variants. For the
// sequential flavors the mode order determines which ranks have already
// replaced their extents when each mode is processed. `iters` holds
// per-mode sweep counts (indexed by mode, 1-based outside) and only
// matters for the Als flavors.
enum class CostFlavor { kTAls, kTEig, kTSvd, kStAls, kStEig, kStSvd };

double cost_model(const Truncation& trunc, const Shape& shape,
                  const ModeOrder& order, CostFlavor flavor,
                  const std::vector<double>& iters);

// Decomposition error bounds, evaluated against the spectral tails:
//  - quadrature bound: rel_err^2 <= sum_n(eta_n^2 + gamma_n / ||t||_F^2),
//    with eta_n the per-mode achieved ALS tolerance (0 for Svd/Eig engines,
//    which solve their subproblems at working precision);
//  - tail bound (Svd/Eig engines): ||t - reconstruct||_F^2 <= sum_n gamma_n;
//  - loose bound: rel_err <= sqrt(N) * (max_n eta_n + sqrt(max_n gamma_n)
//    / ||t||_F) — the unknowable optimal error is replaced by a computable
//    lower bound, which this form tolerates.
struct BoundCheck {
  double rel_err = 0.0;
  double quadrature_rhs = 0.0;  // sqrt of the summed bound
  bool quadrature_ok = false;
  double tail_lhs_sq = 0.0;
  double tail_rhs_sq = 0.0;
  bool tail_ok = false;        // meaningful when tail_applicable
  bool tail_applicable = false;  // engine solved subproblems exactly
  double loose_rhs = 0.0;
  bool loose_ok = false;
};

BoundCheck check_bounds(const DenseTensor& t, const TuckerTensor& result,
                        const DecompositionReport& report,
                        const Truncation& trunc);

}  // namespace tenkit
