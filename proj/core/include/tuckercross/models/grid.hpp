#pragma once

#include <Eigen/Core>

#include "tuckercross/dense_tensor.hpp"

namespace tuckercross::models {

enum class Boundary { Periodic, Dirichlet };

/// Uniform 1-D grid.  Periodic grids omit the right endpoint (it aliases the
/// left one); Dirichlet grids include both endpoints.
struct Grid1D {
  Eigen::VectorXd points;
  double spacing = 0.0;
  Boundary boundary = Boundary::Dirichlet;

  Index size() const { return points.size(); }
};

Grid1D uniform_grid(double a, double b, Index n, Boundary boundary);

/// Dense N x N second-order finite-difference operator: central differences in
/// the interior, wrapped for periodic grids, one-sided second-order closures
/// at Dirichlet boundaries.  `order` selects d/dx (1) or d^2/dx^2 (2).
/// Requires n >= 5.
Eigen::MatrixXd diff_matrix(const Grid1D& grid, int order);

/// Trapezoidal quadrature weights (h at interior points, h/2 at Dirichlet
/// endpoints, uniform h for periodic grids).
Eigen::VectorXd trapezoid_weights(const Grid1D& grid);

}  // namespace tuckercross::models
