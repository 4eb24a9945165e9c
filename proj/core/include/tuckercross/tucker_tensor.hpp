#pragma once

#include <Eigen/Core>
#include <vector>

#include "tuckercross/dense_tensor.hpp"

namespace tuckercross {

/// Tucker representation: core of shape (r_1..r_d) plus one N_i x r_i factor
/// matrix per mode.  Factors are orthonormal for HOSVD- and cross-built
/// decompositions; the skeleton baseline stores raw (oblique) factors here
/// as well, so orthonormality is asserted by callers, not by the type.
struct TuckerTensor {
  DenseTensor core;
  std::vector<Eigen::MatrixXd> factors;

  Index order() const { return core.order(); }
  std::vector<Index> multirank() const { return core.shape(); }

  /// Ambient shape (N_1..N_d).
  std::vector<Index> shape() const;

  /// Largest deviation ||U^T U - I||_F over all factors.
  double orthonormality_defect() const;

  /// Throws std::invalid_argument if factor shapes are inconsistent with the
  /// core or r_i > N_i.
  void validate() const;
};

/// Dense reconstruction: core multiplied along every mode by its factor.
DenseTensor reconstruct(const TuckerTensor& tt);

/// Single entry of the reconstruction without densifying.
double reconstruct_entry(const TuckerTensor& tt, std::span<const Index> idx);

}  // namespace tuckercross
