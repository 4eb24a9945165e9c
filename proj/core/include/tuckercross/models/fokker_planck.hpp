#pragma once

#include <Eigen/Core>
#include <vector>

#include "tuckercross/dlra.hpp"
#include "tuckercross/models/grid.hpp"
#include "tuckercross/models/stencil_oracle.hpp"

namespace tuckercross::models {

struct FokkerPlanckParams {
  double alpha = 0.75;       // drift f_i = -alpha x_i
  Eigen::MatrixXd diffusion; // D, d x d symmetric positive semidefinite
  Eigen::VectorXd mean0;     // initial Gaussian mean
  Eigen::MatrixXd cov0;      // initial Gaussian covariance, positive definite
};

/// alpha = 0.75, D = I, mean (1.5, 0.6, -0.3, -1.2), unit variances with 0.5
/// cross-covariances.
FokkerPlanckParams default_fokker_planck_params();

/// dp/dt = -sum_i d/dx_i(f_i p) + 1/2 sum_ij D_ij d^2/dx_i dx_j p on Dirichlet
/// grids.  The right-hand side is forced to zero at boundary coordinates (the
/// density is negligible there), which keeps every fiber stencil within a
/// one-point halo.
class FokkerPlanckModel final : public TdeModel {
 public:
  FokkerPlanckModel(FokkerPlanckParams params, std::vector<Grid1D> grids);
  FokkerPlanckModel(const FokkerPlanckModel&) = delete;
  FokkerPlanckModel& operator=(const FokkerPlanckModel&) = delete;

  std::vector<Index> shape() const override;
  std::unique_ptr<FiberOracle> make_oracle(double t, const TuckerTensor& v) const override;
  DenseTensor dense_rhs(double t, const DenseTensor& v) const override;

  const FokkerPlanckParams& params() const { return params_; }
  const std::vector<Grid1D>& grids() const { return grids_; }

 private:
  FokkerPlanckParams params_;
  std::vector<Grid1D> grids_;
  std::vector<Eigen::MatrixXd> combined_;  // alpha D1 diag(x) + 1/2 D_ii D2 per mode
  std::vector<Eigen::MatrixXd> first_;     // D1 per mode (cross-diffusion terms)
  std::vector<LinearTerm> terms_;
  std::vector<bool> periodic_;
  std::vector<bool> mask_;
};

/// Dense multivariate normal density on the grid tensor product.
DenseTensor gaussian_density(const std::vector<Grid1D>& grids, const Eigen::VectorXd& mean,
                             const Eigen::MatrixXd& cov);

}  // namespace tuckercross::models
