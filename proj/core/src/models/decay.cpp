#include "tuckercross/models/decay.hpp"

#include "tuckercross/models/stencil_oracle.hpp"

namespace tuckercross::models {

DecayModel::DecayModel(std::vector<Index> shape) : shape_(std::move(shape)) {}

std::unique_ptr<FiberOracle> DecayModel::make_oracle(double /*t*/, const TuckerTensor& v) const {
  const size_t d = shape_.size();
  return std::make_unique<StencilRhsOracle>(v, std::vector<LinearTerm>{{-1.0, {}}}, nullptr,
                                            std::vector<bool>(d, false),
                                            std::vector<bool>(d, false),
                                            std::vector<Index>(d, 0));
}

DenseTensor DecayModel::dense_rhs(double /*t*/, const DenseTensor& v) const {
  return apply_stencil_rhs(v, {{-1.0, {}}}, nullptr, std::vector<bool>(shape_.size(), false));
}

}  // namespace tuckercross::models
