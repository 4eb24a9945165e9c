#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "tuckercross/models/fokker_planck.hpp"
#include "tuckercross/models/grid.hpp"
#include "tuckercross/tucker_tensor.hpp"

namespace tuckercross::models {

/// Closed-form Gaussian moments of the Ornstein-Uhlenbeck density:
/// mean(t) = mean0 exp(-alpha t), cov(t) = D/2a + (cov0 - D/2a) exp(-2 alpha t).
std::pair<Eigen::VectorXd, Eigen::MatrixXd> gaussian_moments(const FokkerPlanckParams& params,
                                                             double t);

/// Trapezoidal first and second central moments of a low-rank density,
/// computed factor-wise (never densifying) and normalized by the total mass.
/// Throws DegenerateDensityError when the mass is nonpositive.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> quadrature_moments(const TuckerTensor& density,
                                                               const std::vector<Grid1D>& grids);

/// Integral of v^2 over the first two modes of a 4-D field, as an N3 x N4
/// matrix; computed through per-mode Gram matrices of the factors.
Eigen::MatrixXd squared_marginal_34(const TuckerTensor& v, const std::vector<Grid1D>& grids);

struct FootprintReport {
  std::int64_t dense = 0;
  std::int64_t cross = 0;
  double ratio = 0.0;
};

/// Entry counts for a dense N^d tensor versus its sampled-fiber representation
/// (d N r'^(d-1) fibers plus the r'^d intersection).
FootprintReport memory_footprint(Index n, Index d, Index r_prime);

}  // namespace tuckercross::models
