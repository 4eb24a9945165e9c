#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <optional>
#include <vector>

#include "tuckercross/dense_tensor.hpp"

namespace tuckercross {

/// Per-mode gather selector: a list of (possibly repeated) indices, or
/// std::nullopt meaning "all indices of that mode".
using Selector = std::optional<std::vector<Index>>;

/// Mode-n unfolding, N_n x prod_{k != n} N_k.  Entry (i_0..i_{d-1}) lands in
/// row i_n and column sum_{k != n} i_k * J_k with J_k = prod_{m<k, m!=n} N_m,
/// i.e. among the remaining modes the lowest mode varies fastest.
Eigen::MatrixXd unfold(const DenseTensor& t, Index mode);

/// Inverse of unfold: refolds a matrix into a tensor of the given shape.
DenseTensor fold(const Eigen::MatrixXd& m, Index mode, const std::vector<Index>& shape);

/// n-mode product t x_mode m where m is J x N_mode.  The result replaces the
/// mode extent by J and satisfies unfold(result, mode) == m * unfold(t, mode).
DenseTensor mode_product(const DenseTensor& t, const Eigen::MatrixXd& m, Index mode);

/// Same contract with a sparse operator; pays only for nonzeros, which is what
/// banded finite-difference operators want on full-order tensors.
DenseTensor mode_product(const DenseTensor& t, const Eigen::SparseMatrix<double>& m, Index mode);

double frobenius_norm(const DenseTensor& t);

/// Frobenius inner product of two tensors of identical shape.
double inner(const DenseTensor& a, const DenseTensor& b);

/// Gathers entries at the Cartesian product of the per-mode selectors, in
/// selector order.  Repeated indices duplicate slices.
DenseTensor subtensor(const DenseTensor& t, const std::vector<Selector>& selectors);

}  // namespace tuckercross
