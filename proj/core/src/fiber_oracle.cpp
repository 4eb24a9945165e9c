#include "tuckercross/fiber_oracle.hpp"

#include <stdexcept>
#include <string>

#include "tuckercross/tensor_ops.hpp"

namespace tuckercross {

FiberOracle::FiberOracle(std::vector<Index> shape, std::vector<Index> halo_width)
    : shape_(std::move(shape)), halo_(std::move(halo_width)) {
  if (shape_.empty()) throw std::invalid_argument("oracle shape must have order >= 1");
  if (halo_.size() != shape_.size()) {
    throw std::invalid_argument("one halo width per mode is required");
  }
  for (size_t k = 0; k < shape_.size(); ++k) {
    if (shape_[k] < 1) throw std::invalid_argument("oracle extents must be positive");
    if (halo_[k] < 0) throw std::invalid_argument("halo widths must be nonnegative");
  }
}

Eigen::MatrixXd FiberOracle::fiber_block(Index mode,
                                         const std::vector<std::vector<Index>>& others) const {
  if (mode < 0 || mode >= order()) throw std::invalid_argument("fiber mode out of range");
  if (static_cast<Index>(others.size()) != order()) {
    throw std::invalid_argument("one index list per mode is required");
  }
  Index cols = 1;
  for (Index k = 0; k < order(); ++k) {
    if (k == mode) continue;
    const auto& idx = others[static_cast<size_t>(k)];
    if (idx.empty()) throw std::invalid_argument("empty index list at mode " + std::to_string(k));
    for (Index i : idx) {
      if (i < 0 || i >= shape_[static_cast<size_t>(k)]) {
        throw std::invalid_argument("fiber index out of range at mode " + std::to_string(k));
      }
    }
    cols *= static_cast<Index>(idx.size());
  }
  touched_.fetch_add(shape_[static_cast<size_t>(mode)] * cols, std::memory_order_relaxed);
  Eigen::MatrixXd block = eval_block(mode, others);
  if (block.rows() != shape_[static_cast<size_t>(mode)] || block.cols() != cols) {
    throw std::logic_error("oracle returned a block of unexpected shape");
  }
  return block;
}

DenseOracle::DenseOracle(DenseTensor t)
    : FiberOracle(t.shape(), std::vector<Index>(t.shape().size(), 0)), tensor_(std::move(t)) {}

Eigen::MatrixXd DenseOracle::eval_block(Index mode,
                                        const std::vector<std::vector<Index>>& others) const {
  std::vector<Selector> sel(static_cast<size_t>(order()));
  for (Index k = 0; k < order(); ++k) {
    if (k != mode) sel[static_cast<size_t>(k)] = others[static_cast<size_t>(k)];
  }
  return unfold(subtensor(tensor_, sel), mode);
}

CallableOracle::CallableOracle(std::vector<Index> shape, EntryFn fn)
    : FiberOracle(shape, std::vector<Index>(shape.size(), 0)), fn_(std::move(fn)) {}

Eigen::MatrixXd CallableOracle::eval_block(Index mode,
                                           const std::vector<std::vector<Index>>& others) const {
  const Index d = order();
  const Index rows = shape()[static_cast<size_t>(mode)];
  Index cols = 1;
  for (Index k = 0; k < d; ++k) {
    if (k != mode) cols *= static_cast<Index>(others[static_cast<size_t>(k)].size());
  }
  Eigen::MatrixXd block(rows, cols);
  std::vector<Index> idx(static_cast<size_t>(d), 0);
  std::vector<Index> counters(static_cast<size_t>(d), 0);
  for (Index c = 0; c < cols; ++c) {
    for (Index k = 0; k < d; ++k) {
      if (k == mode) continue;
      idx[static_cast<size_t>(k)] =
          others[static_cast<size_t>(k)][static_cast<size_t>(counters[static_cast<size_t>(k)])];
    }
    for (Index i = 0; i < rows; ++i) {
      idx[static_cast<size_t>(mode)] = i;
      block(i, c) = fn_(idx);
    }
    // Lowest mode varies fastest, matching the unfolding column order.
    for (Index k = 0; k < d; ++k) {
      if (k == mode) continue;
      auto& ck = counters[static_cast<size_t>(k)];
      ++ck;
      if (ck < static_cast<Index>(others[static_cast<size_t>(k)].size())) break;
      ck = 0;
    }
  }
  return block;
}

}  // namespace tuckercross
