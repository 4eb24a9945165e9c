#pragma once

#include <Eigen/Core>

namespace tuckercross {

struct TruncatedSvd {
  Eigen::MatrixXd u;       // rows x r, orthonormal columns
  Eigen::VectorXd values;  // r, nonincreasing and nonnegative
  Eigen::MatrixXd v;       // cols x r, orthonormal columns
};

/// Rank-r truncated SVD.  Signs are normalized so the largest-magnitude entry
/// of each left singular vector is positive.  Throws std::invalid_argument if
/// r is not in [1, min(rows, cols)].
TruncatedSvd truncated_svd(const Eigen::MatrixXd& m, Eigen::Index r);

/// Like truncated_svd but skips the right singular vectors (`v` is left
/// empty).  `u` and `values` match truncated_svd exactly; on very wide
/// matrices this roughly halves the cost.
///
/// With `gram_for_wide` set and cols >= 32 * rows, the left vectors are taken
/// from an eigendecomposition of m m^T instead, which costs O(rows^2 cols).
/// Singular values below ~sqrt(eps) of the largest then lose relative
/// accuracy, so this is only for callers that use the trailing directions
/// heuristically (e.g. sampling guides), never for spectral decisions.
TruncatedSvd truncated_left_svd(const Eigen::MatrixXd& m, Eigen::Index r,
                                bool gram_for_wide = false);

/// All singular values of m, nonincreasing.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

/// Moore-Penrose pseudo-inverse via SVD with relative cutoff
/// `rcond * sigma_max` on retained singular values.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double rcond = 1e-12);

}  // namespace tuckercross
