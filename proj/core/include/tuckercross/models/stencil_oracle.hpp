#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "tuckercross/dense_tensor.hpp"
#include "tuckercross/fiber_oracle.hpp"
#include "tuckercross/tucker_tensor.hpp"

namespace tuckercross::models {

/// Fiber block of the reconstruction of a Tucker tensor: all of `mode`, the
/// given index lists elsewhere, columns ordered with the lowest mode varying
/// fastest (matching unfold).  Never densifies.
Eigen::MatrixXd low_rank_fiber_block(const TuckerTensor& v, Index mode,
                                     const std::vector<std::vector<Index>>& others);

/// One additive right-hand-side term: coeff times a product of 1-D operators
/// applied along distinct modes.  Interior rows of each operator must be
/// supported on the nearest-neighbor band (the declared halo); one-sided
/// boundary rows are permitted only on modes whose boundary values are masked.
struct LinearTerm {
  double coeff = 1.0;
  std::vector<std::pair<Index, const Eigen::MatrixXd*>> ops;
};

/// Right-hand sides of the form  sum_j coeff_j (op products) v  +  s(v)
/// evaluated fiber-wise around a low-rank solution.  Requested fibers read the
/// solution only within the declared halo of the sampled indices; on masked
/// (Dirichlet) modes the output is forced to zero at boundary coordinates.
class StencilRhsOracle final : public FiberOracle {
 public:
  StencilRhsOracle(TuckerTensor v, std::vector<LinearTerm> terms,
                   std::function<double(double)> pointwise, std::vector<bool> periodic,
                   std::vector<bool> mask_boundary, std::vector<Index> halo);

  /// Optional in-place vectorized form of `pointwise`, applied to whole fiber
  /// blocks instead of entry by entry; must agree with `pointwise` exactly.
  void set_pointwise_bulk(std::function<void(Eigen::MatrixXd&)> f) {
    pointwise_bulk_ = std::move(f);
  }

 protected:
  Eigen::MatrixXd eval_block(Index mode,
                             const std::vector<std::vector<Index>>& others) const override;

 private:
  TuckerTensor v_;
  std::vector<LinearTerm> terms_;  // operator pointers must outlive the oracle
  std::function<double(double)> pointwise_;
  std::function<void(Eigen::MatrixXd&)> pointwise_bulk_;
  std::vector<bool> periodic_;
  std::vector<bool> mask_;
};

/// Dense application of the same right-hand side; the full-order reference.
DenseTensor apply_stencil_rhs(const DenseTensor& v, const std::vector<LinearTerm>& terms,
                              const std::function<double(double)>& pointwise,
                              const std::vector<bool>& mask_boundary);

}  // namespace tuckercross::models
