#include "tuckercross/tucker_tensor.hpp"

#include <stdexcept>
#include <string>

#include "tuckercross/tensor_ops.hpp"

namespace tuckercross {

std::vector<Index> TuckerTensor::shape() const {
  std::vector<Index> s(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) s[i] = factors[i].rows();
  return s;
}

double TuckerTensor::orthonormality_defect() const {
  double worst = 0.0;
  for (const auto& u : factors) {
    Eigen::MatrixXd g = u.transpose() * u;
    g.diagonal().array() -= 1.0;
    worst = std::max(worst, g.norm());
  }
  return worst;
}

void TuckerTensor::validate() const {
  if (static_cast<Index>(factors.size()) != core.order()) {
    throw std::invalid_argument("factor count does not match core order");
  }
  for (Index i = 0; i < core.order(); ++i) {
    const auto& u = factors[static_cast<size_t>(i)];
    if (u.cols() != core.dim(i)) {
      throw std::invalid_argument("factor " + std::to_string(i) +
                                  " column count does not match core extent");
    }
    if (u.cols() > u.rows()) {
      throw std::invalid_argument("factor " + std::to_string(i) + " has rank above its extent");
    }
  }
}

DenseTensor reconstruct(const TuckerTensor& tt) {
  tt.validate();
  DenseTensor out = tt.core;
  for (Index i = 0; i < tt.order(); ++i) {
    out = mode_product(out, tt.factors[static_cast<size_t>(i)], i);
  }
  return out;
}

double reconstruct_entry(const TuckerTensor& tt, std::span<const Index> idx) {
  if (static_cast<Index>(idx.size()) != tt.order()) {
    throw std::invalid_argument("multi-index rank does not match tensor order");
  }
  DenseTensor slice = tt.core;
  for (Index i = 0; i < tt.order(); ++i) {
    slice = mode_product(slice, tt.factors[static_cast<size_t>(i)].row(idx[static_cast<size_t>(i)]), i);
  }
  return slice[0];
}

}  // namespace tuckercross
