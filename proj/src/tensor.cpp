#include "tenkit/tensor.hpp"

#include <string>
#include <utility>

#include "tenkit/errors.hpp"

namespace tenkit {

DenseTensor::DenseTensor(Shape shape)
    : shape_(std::move(shape)), data_(shape_.element_count(), 0.0) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != shape_.element_count()) {
    throw DimensionMismatchError(
        "DenseTensor: data length " + std::to_string(data_.size()) +
        " != element count " + std::to_string(shape_.element_count()));
  }
}

std::size_t DenseTensor::offset(const std::vector<std::size_t>& index) const {
  if (index.size() != shape_.order()) {
    throw DimensionMismatchError("index order " + std::to_string(index.size()) +
                                 " != tensor order " +
                                 std::to_string(shape_.order()));
  }
  std::size_t off = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= shape_.dims()[k]) {
      throw DimensionMismatchError("index out of range along mode " +
                                   std::to_string(k + 1));
    }
    off += index[k] * stride;
    stride *= shape_.dims()[k];
  }
  return off;
}

}  // namespace tenkit
