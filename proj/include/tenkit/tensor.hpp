#pragma once

#include <cstddef>
#include <vector>

#include "tenkit/shape.hpp"

namespace tenkit {

// Dense tensor of doubles in generalized column-major order (first index
// fastest). Immutable sharing across threads is safe once constructed.
class DenseTensor {
 public:
  explicit DenseTensor(Shape shape);  // zero-filled
  DenseTensor(Shape shape, std::vector<double> data);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  // Flat offset of a 0-based multi-index.
  std::size_t offset(const std::vector<std::size_t>& index) const;

  double at(const std::vector<std::size_t>& index) const {
    return data_[offset(index)];
  }
  double& at(const std::vector<std::size_t>& index) {
    return data_[offset(index)];
  }

 private:
  Shape shape_;
  std::vector<double> data_;
};

}  // namespace tenkit
