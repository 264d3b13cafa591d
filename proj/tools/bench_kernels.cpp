// Compares the chunked/OpenMP contraction kernels against the serial
// reference implementations: wall time side by side plus an agreement
// check. Exits nonzero if any kernel drifts beyond 1e-13 relative.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "tenkit/matrix.hpp"
#include "tenkit/parallel.hpp"
#include "tenkit/reference.hpp"
#include "tenkit/rng.hpp"
#include "tenkit/tensor.hpp"
#include "tenkit/tensor_ops.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

tenkit::DenseTensor random_tensor(const std::vector<std::size_t>& dims,
                                  std::uint64_t seed) {
  tenkit::DenseTensor t{tenkit::Shape(dims)};
  std::mt19937_64 eng = tenkit::seeded_engine(seed);
  double* data = t.data();
  for (std::size_t i = 0; i < t.size(); ++i) {
    data[i] = tenkit::uniform_in(eng, -1.0, 1.0);
  }
  return t;
}

tenkit::Matrix random_matrix(std::size_t rows, std::size_t cols,
                             std::uint64_t seed) {
  tenkit::Matrix m(rows, cols);
  std::mt19937_64 eng = tenkit::seeded_engine(seed);
  double* data = m.data();
  for (std::size_t i = 0; i < rows * cols; ++i) {
    data[i] = tenkit::uniform_in(eng, -1.0, 1.0);
  }
  return m;
}

double max_rel_diff(const tenkit::Matrix& a, const tenkit::Matrix& b) {
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) {
    scale = std::max(scale, std::fabs(a.data()[i]));
    diff = std::max(diff, std::fabs(a.data()[i] - b.data()[i]));
  }
  return scale == 0.0 ? diff : diff / scale;
}

bool report(const char* kernel, const std::string& config, double serial_sec,
            double parallel_sec, double rel_diff) {
  const bool ok = rel_diff <= 1e-13;
  std::printf("%-16s %-24s %10.4fs %10.4fs %8.2fx   %.2e  %s\n", kernel,
              config.c_str(), serial_sec, parallel_sec,
              parallel_sec > 0.0 ? serial_sec / parallel_sec : 0.0, rel_diff,
              ok ? "ok" : "MISMATCH");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = tenkit::max_threads();
  if (argc > 1) threads = std::atoi(argv[1]);
  tenkit::set_threads(threads);
  std::printf("threads: %d\n", tenkit::max_threads());
  std::printf("%-16s %-24s %11s %11s %9s   %-9s\n", "kernel", "config",
              "serial", "parallel", "speedup", "max-rel-diff");

  bool all_ok = true;
  const std::vector<std::size_t> dims{60, 70, 80};
  const tenkit::DenseTensor t = random_tensor(dims, 11);
  const std::size_t trunc_cols = 12;

  for (std::size_t mode = 1; mode <= 3; ++mode) {
    const std::size_t extent = t.shape().extent(mode);
    const std::size_t fibers = t.size() / extent;
    const std::string config =
        "60x70x80 mode " + std::to_string(mode);

    {
      const tenkit::Matrix m = random_matrix(fibers, trunc_cols, 21 + mode);
      Clock::time_point s0 = Clock::now();
      const tenkit::Matrix slow = tenkit::ref::unfold_times(t, mode, m);
      const double serial = elapsed(s0);
      s0 = Clock::now();
      const tenkit::Matrix fast = tenkit::unfold_times(t, mode, m);
      all_ok &= report("unfold_times", config, serial, elapsed(s0),
                       max_rel_diff(slow, fast));
    }
    {
      const tenkit::Matrix m = random_matrix(extent, trunc_cols, 31 + mode);
      Clock::time_point s0 = Clock::now();
      const tenkit::Matrix slow = tenkit::ref::unfold_t_times(t, mode, m);
      const double serial = elapsed(s0);
      s0 = Clock::now();
      const tenkit::Matrix fast = tenkit::unfold_t_times(t, mode, m);
      all_ok &= report("unfold_t_times", config, serial, elapsed(s0),
                       max_rel_diff(slow, fast));
    }
    {
      const tenkit::Matrix u = random_matrix(trunc_cols, extent, 41 + mode);
      Clock::time_point s0 = Clock::now();
      const tenkit::DenseTensor slow = tenkit::ref::mode_n_product(t, u, mode);
      const double serial = elapsed(s0);
      s0 = Clock::now();
      const tenkit::DenseTensor fast = tenkit::mode_n_product(t, u, mode);
      const tenkit::Matrix sm(slow.size(), 1, slow.values());
      const tenkit::Matrix fm(fast.size(), 1, fast.values());
      all_ok &= report("mode_n_product", config, serial, elapsed(s0),
                       max_rel_diff(sm, fm));
    }
  }

  {
    const tenkit::Matrix a = random_matrix(400, 300, 51);
    const tenkit::Matrix b = random_matrix(300, 200, 52);
    Clock::time_point s0 = Clock::now();
    const tenkit::Matrix slow = tenkit::ref::matmul(a, b);
    const double serial = elapsed(s0);
    s0 = Clock::now();
    const tenkit::Matrix fast = tenkit::matmul(a, b);
    all_ok &= report("matmul", "400x300 * 300x200", serial, elapsed(s0),
                     max_rel_diff(slow, fast));
  }
  {
    Clock::time_point s0 = Clock::now();
    const double slow = tenkit::ref::frobenius_norm(t);
    const double serial = elapsed(s0);
    s0 = Clock::now();
    const double fast = tenkit::frobenius_norm(t);
    const double diff = std::fabs(slow - fast) / slow;
    all_ok &= report("frobenius_norm", "60x70x80", serial, elapsed(s0), diff);
  }

  if (!all_ok) {
    std::printf("FAILED: kernel disagreement beyond 1e-13\n");
    return 1;
  }
  std::printf("all kernels agree with the serial reference\n");
  return 0;
}
