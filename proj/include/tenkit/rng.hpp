#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tenkit {

// Reproducible random streams on top of std::mt19937_64.
//
// The standard distribution adapters (std::uniform_real_distribution,
// std::normal_distribution) are implementation-defined, so the mappings
// below are spelled out by hand: identical seeds give identical streams on
// any conforming toolchain, which the generator and determinism contracts
// rely on.

// Uniform on [0, 1): top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform on [lo, hi).
inline double uniform_in(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

// Standard Gaussian via Box-Muller; consumes engine draws in pairs and
// caches the second variate.
class GaussianStream {
 public:
  explicit GaussianStream(std::mt19937_64& eng) : eng_(eng) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1]: guards log(0).
    double u1 = 1.0 - uniform01(eng_);
    double u2 = uniform01(eng_);
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64& eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Engine for a (seed, stream) pair; used to give each mode of a
// decomposition its own reproducible initializer stream.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint32_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace tenkit
