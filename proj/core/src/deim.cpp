#include "tuckercross/deim.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "tuckercross/errors.hpp"

namespace tuckercross {

namespace {

// First occurrence of the maximum, so exact ties break to the lowest index.
Index argmax_abs(const Eigen::VectorXd& v) {
  Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  return best;
}

}  // namespace

std::vector<Index> deim_indices(const Eigen::MatrixXd& basis) {
  const Index n = basis.rows();
  const Index p = basis.cols();
  if (p < 1 || p > n) {
    throw std::invalid_argument("basis must have between 1 and N columns");
  }

  std::vector<Index> indices;
  indices.reserve(static_cast<size_t>(p));
  indices.push_back(argmax_abs(basis.col(0)));

  for (Index j = 1; j < p; ++j) {
    Eigen::MatrixXd sampled(j, j);
    Eigen::VectorXd rhs(j);
    for (Index k = 0; k < j; ++k) {
      sampled.row(k) = basis.row(indices[static_cast<size_t>(k)]).head(j);
      rhs(k) = basis(indices[static_cast<size_t>(k)], j);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sampled);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (pivots.minCoeff() < 1e-12 * std::max(pivots.maxCoeff(), 1e-300)) {
      throw DegenerateBasisError("interpolation system is numerically singular at column " +
                                 std::to_string(j));
    }
    const Eigen::VectorXd coeff = lu.solve(rhs);
    const Eigen::VectorXd residual = basis.col(j) - basis.leftCols(j) * coeff;
    if (residual.cwiseAbs().maxCoeff() <= 1e-12 * basis.col(j).norm()) {
      throw DegenerateBasisError("column " + std::to_string(j) +
                                 " is numerically dependent on the previous columns");
    }
    const Index next = argmax_abs(residual);
    if (std::find(indices.begin(), indices.end(), next) != indices.end()) {
      throw DegenerateBasisError("column " + std::to_string(j) +
                                 " is numerically dependent on the previous columns");
    }
    indices.push_back(next);
  }
  return indices;
}

}  // namespace tuckercross
