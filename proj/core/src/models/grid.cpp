#include "tuckercross/models/grid.hpp"

#include <stdexcept>

namespace tuckercross::models {

Grid1D uniform_grid(double a, double b, Index n, Boundary boundary) {
  if (n < 2) throw std::invalid_argument("grid needs at least two points");
  if (!(b > a)) throw std::invalid_argument("grid interval is empty");
  Grid1D g;
  g.boundary = boundary;
  g.spacing = boundary == Boundary::Periodic ? (b - a) / static_cast<double>(n)
                                             : (b - a) / static_cast<double>(n - 1);
  g.points.resize(n);
  for (Index j = 0; j < n; ++j) g.points(j) = a + static_cast<double>(j) * g.spacing;
  return g;
}

Eigen::MatrixXd diff_matrix(const Grid1D& grid, int order) {
  const Index n = grid.size();
  if (n < 5) throw std::invalid_argument("differentiation needs at least five grid points");
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const double h = grid.spacing;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const bool periodic = grid.boundary == Boundary::Periodic;

  auto wrap = [n](Index j) { return (j % n + n) % n; };
  for (Index j = 0; j < n; ++j) {
    const bool interior = j > 0 && j < n - 1;
    if (periodic || interior) {
      if (order == 1) {
        m(j, wrap(j - 1)) -= 1.0 / (2 * h);
        m(j, wrap(j + 1)) += 1.0 / (2 * h);
      } else {
        m(j, wrap(j - 1)) += 1.0 / (h * h);
        m(j, j) -= 2.0 / (h * h);
        m(j, wrap(j + 1)) += 1.0 / (h * h);
      }
    }
  }
  if (!periodic) {
    if (order == 1) {
      m(0, 0) = -3.0 / (2 * h);
      m(0, 1) = 4.0 / (2 * h);
      m(0, 2) = -1.0 / (2 * h);
      m(n - 1, n - 1) = 3.0 / (2 * h);
      m(n - 1, n - 2) = -4.0 / (2 * h);
      m(n - 1, n - 3) = 1.0 / (2 * h);
    } else {
      const double h2 = h * h;
      m(0, 0) = 2.0 / h2;
      m(0, 1) = -5.0 / h2;
      m(0, 2) = 4.0 / h2;
      m(0, 3) = -1.0 / h2;
      m(n - 1, n - 1) = 2.0 / h2;
      m(n - 1, n - 2) = -5.0 / h2;
      m(n - 1, n - 3) = 4.0 / h2;
      m(n - 1, n - 4) = -1.0 / h2;
    }
  }
  return m;
}

Eigen::VectorXd trapezoid_weights(const Grid1D& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.size(), grid.spacing);
  if (grid.boundary == Boundary::Dirichlet) {
    w(0) *= 0.5;
    w(grid.size() - 1) *= 0.5;
  }
  return w;
}

}  // namespace tuckercross::models
