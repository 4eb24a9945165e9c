#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "tuckercross/dlra.hpp"
#include "tuckercross/models/grid.hpp"
#include "tuckercross/models/stencil_oracle.hpp"

namespace tuckercross::models {

struct AdvectionParams {
  std::function<Eigen::VectorXd(double)> velocity;  // b(t), one entry per mode
  double source_amplitude = 0.1;                    // s(v) = -amp * v / (1 + v^2)
};

/// The 4-D rotating velocity b(t) = (-sin t, cos t, -sin(pi+t), cos(pi+t))
/// with source amplitude 0.1.
AdvectionParams default_advection_params();

/// dv/dt = -b(t) . grad v + s(v) on periodic grids.
class AdvectionModel final : public TdeModel {
 public:
  AdvectionModel(AdvectionParams params, std::vector<Grid1D> grids);
  AdvectionModel(const AdvectionModel&) = delete;
  AdvectionModel& operator=(const AdvectionModel&) = delete;

  std::vector<Index> shape() const override;
  std::unique_ptr<FiberOracle> make_oracle(double t, const TuckerTensor& v) const override;
  DenseTensor dense_rhs(double t, const DenseTensor& v) const override;

  double source(double v) const;
  const std::vector<Grid1D>& grids() const { return grids_; }

 private:
  std::vector<LinearTerm> terms_at(double t) const;

  AdvectionParams params_;
  std::vector<Grid1D> grids_;
  std::vector<Eigen::MatrixXd> first_;  // D1 per mode
  std::vector<bool> periodic_;
  std::vector<bool> mask_;
};

/// Sum of the two 4-D Gaussian bumps used as the initial condition (one
/// couples the (x1,x2) and (x3,x4) pairs, the other is separable).
DenseTensor advection_initial_condition(const std::vector<Grid1D>& grids);

}  // namespace tuckercross::models
