#include "tenkit/shape.hpp"

#include <limits>
#include <sstream>
#include <utility>

#include "tenkit/errors.hpp"

namespace tenkit {

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw DimensionMismatchError("Shape: at least one extent required");
  }
  count_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) {
      throw DimensionMismatchError("Shape: extents must be >= 1");
    }
    if (count_ > std::numeric_limits<std::size_t>::max() / d) {
      throw DimensionMismatchError("Shape: element count overflows");
    }
    count_ *= d;
  }
}

std::size_t Shape::extent(std::size_t mode) const {
  if (mode < 1 || mode > dims_.size()) {
    throw InvalidModeError("mode " + std::to_string(mode) +
                           " out of range 1.." + std::to_string(dims_.size()));
  }
  return dims_[mode - 1];
}

std::size_t Shape::stride(std::size_t mode) const {
  if (mode < 1 || mode > dims_.size()) {
    throw InvalidModeError("mode " + std::to_string(mode) +
                           " out of range 1.." + std::to_string(dims_.size()));
  }
  std::size_t s = 1;
  for (std::size_t m = 0; m + 1 < mode; ++m) {
    s *= dims_[m];
  }
  return s;
}

std::string Shape::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i > 0) out << 'x';
    out << dims_[i];
  }
  return out.str();
}

void Truncation::validate(const Shape& shape) const {
  if (ranks.size() != shape.order()) {
    throw DimensionMismatchError(
        "truncation lists " + std::to_string(ranks.size()) +
        " ranks for an order-" + std::to_string(shape.order()) + " tensor");
  }
  for (std::size_t n = 0; n < ranks.size(); ++n) {
    if (ranks[n] < 1 || ranks[n] > shape.dims()[n]) {
      throw RankTooLargeError("mode " + std::to_string(n + 1) + ": rank " +
                              std::to_string(ranks[n]) +
                              " outside 1.." + std::to_string(shape.dims()[n]));
    }
  }
}

std::string Truncation::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i > 0) out << 'x';
    out << ranks[i];
  }
  return out.str();
}

}  // namespace tenkit
