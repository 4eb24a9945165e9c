#pragma once

#include <Eigen/Core>
#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "tuckercross/dense_tensor.hpp"

namespace tuckercross {

/// Contract for evaluating selected fibers of a (possibly implicitly defined)
/// target tensor.
///
/// A mode-`mode` fiber block is the mode-`mode` unfolding of the subtensor
/// obtained by keeping all of mode `mode` and gathering the given index lists
/// on every other mode; columns enumerate the other-mode index combinations
/// with the lowest mode varying fastest, matching `unfold`.
///
/// `halo_width` declares, per mode, how many neighboring grid indices the
/// evaluator consults around a requested fiber (nonzero for stencil-based
/// right-hand sides).  The entry counter tallies target-tensor entries
/// computed; it accumulates atomically and is excluded from bitwise
/// determinism guarantees.
class FiberOracle {
 public:
  FiberOracle(std::vector<Index> shape, std::vector<Index> halo_width);
  virtual ~FiberOracle() = default;

  const std::vector<Index>& shape() const { return shape_; }
  Index order() const { return static_cast<Index>(shape_.size()); }
  const std::vector<Index>& halo_width() const { return halo_; }

  /// Validates the request, tallies the computed entries, and delegates to
  /// eval_block.  `others` must have one index list per mode; the entry at
  /// `mode` is ignored.
  Eigen::MatrixXd fiber_block(Index mode, const std::vector<std::vector<Index>>& others) const;

  std::int64_t entries_touched() const { return touched_.load(); }
  void reset_entry_counter() const { touched_.store(0); }

 protected:
  virtual Eigen::MatrixXd eval_block(Index mode,
                                     const std::vector<std::vector<Index>>& others) const = 0;

 private:
  std::vector<Index> shape_;
  std::vector<Index> halo_;
  mutable std::atomic<std::int64_t> touched_{0};
};

/// Oracle over a materialized tensor; used for toy targets and as the
/// ground-truth path in tests.
class DenseOracle final : public FiberOracle {
 public:
  explicit DenseOracle(DenseTensor t);

 protected:
  Eigen::MatrixXd eval_block(Index mode,
                             const std::vector<std::vector<Index>>& others) const override;

 private:
  DenseTensor tensor_;
};

/// Oracle over a pointwise entry function; halo is zero.
class CallableOracle final : public FiberOracle {
 public:
  using EntryFn = std::function<double(std::span<const Index>)>;
  CallableOracle(std::vector<Index> shape, EntryFn fn);

 protected:
  Eigen::MatrixXd eval_block(Index mode,
                             const std::vector<std::vector<Index>>& others) const override;

 private:
  EntryFn fn_;
};

}  // namespace tuckercross
