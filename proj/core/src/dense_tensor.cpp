#include "tuckercross/dense_tensor.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tuckercross {

namespace {

std::vector<Index> make_strides(const std::vector<Index>& shape) {
  if (shape.empty()) throw std::invalid_argument("tensor order must be >= 1");
  std::vector<Index> strides(shape.size());
  Index s = 1;
  for (size_t k = shape.size(); k-- > 0;) {
    if (shape[k] < 1) throw std::invalid_argument("tensor extents must be positive");
    strides[k] = s;
    s *= shape[k];
  }
  return strides;
}

Index total_size(const std::vector<Index>& shape) {
  return std::accumulate(shape.begin(), shape.end(), Index{1}, std::multiplies<>());
}

}  // namespace

DenseTensor::DenseTensor(std::vector<Index> shape)
    : shape_(std::move(shape)),
      strides_(make_strides(shape_)),
      data_(static_cast<size_t>(total_size(shape_)), 0.0) {}

DenseTensor::DenseTensor(std::vector<Index> shape, std::vector<double> data)
    : shape_(std::move(shape)), strides_(make_strides(shape_)), data_(std::move(data)) {
  if (static_cast<Index>(data_.size()) != total_size(shape_)) {
    throw std::invalid_argument("data length does not match the product of the shape");
  }
}

Index DenseTensor::flat_index(std::span<const Index> idx) const {
  if (idx.size() != shape_.size()) {
    throw std::invalid_argument("multi-index rank does not match tensor order");
  }
  Index flat = 0;
  for (size_t k = 0; k < shape_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= shape_[k]) {
      throw std::invalid_argument("index out of range at mode " + std::to_string(k));
    }
    flat += idx[k] * strides_[k];
  }
  return flat;
}

}  // namespace tuckercross
