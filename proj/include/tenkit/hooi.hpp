#pragma once

#include <vector>

#include "tenkit/shape.hpp"
#include "tenkit/tensor_ops.hpp"

namespace tenkit {

// Higher-order orthogonal iteration: alternating refinement of all Tucker
// factors toward a locally optimal approximation, used downstream of the
// HOSVD drivers as a warm-started polish.

struct HooiConfig {
  double tol = 1e-12;  // stop when the fit change falls below this
  int max_iters = 100;
};

struct HooiResult {
  TuckerTensor tucker;
  int iterations = 0;
  // fit_history[0] is the warm start's fit; one entry per outer iteration
  // follows. Fit = 1 - relative residual; nondecreasing by construction.
  std::vector<double> fit_history;
  bool converged = false;  // false = iteration cap reached (never fatal)
};

// Refines `init` (which must be conformal with t and trunc). Per outer
// iteration, for each mode in ascending order: contract t with all other
// factors transposed, then replace U^(n) by the leading R_n left singular
// vectors of that shrunk tensor's unfolding (small by construction).
HooiResult hooi(const DenseTensor& t, const Truncation& trunc,
                const TuckerTensor& init, const HooiConfig& cfg);

}  // namespace tenkit
