#pragma once

#include <Eigen/Core>
#include <vector>

#include "tuckercross/dense_tensor.hpp"

namespace tuckercross {

/// Greedy discrete empirical interpolation index selection.
///
/// Given an N x p basis with linearly independent columns, returns p distinct
/// row indices.  The first index is the argmax of |column 1|; each following
/// index is the argmax of the absolute residual of the next column after
/// interpolating it on the rows selected so far.  Ties break to the lowest
/// index.  Throws DegenerateBasisError when an interpolation system is
/// numerically singular (pivot below 1e-12 relative).
std::vector<Index> deim_indices(const Eigen::MatrixXd& basis);

}  // namespace tuckercross
