#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

namespace tuckercross {

using Index = Eigen::Index;

/// Dense d-dimensional tensor with row-major flat storage (the last index
/// varies fastest in memory).  Immutable shape; entries are mutable through
/// the accessors.
class DenseTensor {
 public:
  DenseTensor() = default;

  /// Zero tensor of the given shape.  Every extent must be positive.
  explicit DenseTensor(std::vector<Index> shape);

  /// Wraps a flat row-major buffer.  The buffer length must match the shape.
  DenseTensor(std::vector<Index> shape, std::vector<double> data);

  Index order() const { return static_cast<Index>(shape_.size()); }
  const std::vector<Index>& shape() const { return shape_; }
  Index dim(Index mode) const { return shape_.at(static_cast<size_t>(mode)); }
  Index size() const { return static_cast<Index>(data_.size()); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& operator[](Index flat) { return data_[static_cast<size_t>(flat)]; }
  double operator[](Index flat) const { return data_[static_cast<size_t>(flat)]; }

  double& at(std::span<const Index> idx) { return data_[static_cast<size_t>(flat_index(idx))]; }
  double at(std::span<const Index> idx) const { return data_[static_cast<size_t>(flat_index(idx))]; }

  double& at(std::initializer_list<Index> idx) { return at(std::span<const Index>(idx.begin(), idx.size())); }
  double at(std::initializer_list<Index> idx) const { return at(std::span<const Index>(idx.begin(), idx.size())); }

  /// Row-major flat offset of a multi-index.  Throws std::invalid_argument
  /// on rank mismatch or out-of-range entries.
  Index flat_index(std::span<const Index> idx) const;

  /// Stride of a mode in the flat layout.
  Index stride(Index mode) const { return strides_.at(static_cast<size_t>(mode)); }

  void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

  Eigen::Map<Eigen::VectorXd> as_vector() {
    return Eigen::Map<Eigen::VectorXd>(data_.data(), size());
  }
  Eigen::Map<const Eigen::VectorXd> as_vector() const {
    return Eigen::Map<const Eigen::VectorXd>(data_.data(), size());
  }

 private:
  std::vector<Index> shape_;
  std::vector<Index> strides_;
  std::vector<double> data_;
};

}  // namespace tuckercross
