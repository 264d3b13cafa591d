#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tenkit {

// Extents (I_1, ..., I_N) of a dense tensor, N >= 1.
//
// Modes are 1-based in the public interface; flat storage offsets are
// 0-based. Storage is generalized column-major: the first index varies
// fastest, so the flat offset of (i_1, ..., i_N), 1-based, is
// (i_1 - 1) + sum_k (i_k - 1) * prod_{m<k} I_m.
class Shape {
 public:
  explicit Shape(std::vector<std::size_t> dims);

  std::size_t order() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }

  // Extent I_mode, mode in 1..N.
  std::size_t extent(std::size_t mode) const;

  // Distance in the flat layout between consecutive values of the mode's
  // index, i.e. prod of the extents of all lower modes.
  std::size_t stride(std::size_t mode) const;

  // prod I_n, overflow-checked.
  std::size_t element_count() const { return count_; }

  bool operator==(const Shape& other) const { return dims_ == other.dims_; }
  bool operator!=(const Shape& other) const { return dims_ != other.dims_; }

  // "20x20x2000" — used in messages and CSV fields.
  std::string to_string() const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t count_ = 0;
};

// Target multilinear rank (R_1, ..., R_N) of a truncated decomposition.
struct Truncation {
  std::vector<std::size_t> ranks;

  // Enforces 1 <= R_n <= I_n for every mode; throws RankTooLargeError with
  // the offending mode named, or DimensionMismatchError if the orders differ.
  void validate(const Shape& shape) const;

  std::string to_string() const;
};

}  // namespace tenkit
