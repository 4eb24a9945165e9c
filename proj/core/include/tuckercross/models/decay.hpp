#pragma once

#include <vector>

#include "tuckercross/dlra.hpp"

namespace tuckercross::models {

/// dV/dt = -V; the analytic-solution test problem (V(t) = V0 exp(-t)).
class DecayModel final : public TdeModel {
 public:
  explicit DecayModel(std::vector<Index> shape);

  std::vector<Index> shape() const override { return shape_; }
  std::unique_ptr<FiberOracle> make_oracle(double t, const TuckerTensor& v) const override;
  DenseTensor dense_rhs(double t, const DenseTensor& v) const override;

 private:
  std::vector<Index> shape_;
};

}  // namespace tuckercross::models
