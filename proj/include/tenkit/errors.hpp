#pragma once

#include <stdexcept>
#include <string>

namespace tenkit {

// Failure categories. The command-line tool maps them to exit codes:
// usage -> 1, I/O and file-format -> 2, numerical -> 3.
enum class ErrorCategory { kUsage, kIo, kNumerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Mode index outside 1..N, or a duplicate mode in a multi-mode product.
struct InvalidModeError : Error {
  explicit InvalidModeError(const std::string& message)
      : Error(ErrorCategory::kUsage, message) {}
};

// Operands whose shapes do not conform.
struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& message)
      : Error(ErrorCategory::kUsage, message) {}
};

// relative_error against a zero-norm reference tensor.
struct ZeroReferenceError : Error {
  explicit ZeroReferenceError(const std::string& message)
      : Error(ErrorCategory::kUsage, message) {}
};

// Requested truncation rank outside 1..I_n (or above the numerical rank,
// when surfaced from a singular Gram system).
struct RankTooLargeError : Error {
  explicit RankTooLargeError(const std::string& message)
      : Error(ErrorCategory::kNumerical, message) {}
};

// Cholesky pivot collapse in a normal-equations solve: the iterate lost
// full column rank, typically because the truncation rank exceeds the
// numerical rank of the unfolding.
struct SingularGramError : Error {
  explicit SingularGramError(const std::string& message)
      : Error(ErrorCategory::kNumerical, message) {}
};

// The randomized-range initializer produced a rank-deficient basis
// (e.g. the input tensor is zero along the requested mode).
struct DegenerateInitError : Error {
  explicit DegenerateInitError(const std::string& message)
      : Error(ErrorCategory::kNumerical, message) {}
};

// An iterative kernel hit its iteration cap.
struct NoConvergenceError : Error {
  explicit NoConvergenceError(const std::string& message)
      : Error(ErrorCategory::kNumerical, message) {}
};

struct IoError : Error {
  explicit IoError(const std::string& message)
      : Error(ErrorCategory::kIo, message) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& message)
      : Error(ErrorCategory::kIo, message) {}
};

}  // namespace tenkit
