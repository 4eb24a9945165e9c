#include "tuckercross/models/stencil_oracle.hpp"

#include <stdexcept>
#include <string>

#include "tuckercross/tensor_ops.hpp"

namespace tuckercross::models {

namespace {

std::vector<Index> shape_of(const TuckerTensor& v) { return v.shape(); }

// Odometer over the non-target index lists, lowest mode fastest; mirrors the
// column order of fiber blocks.
class ColumnCounters {
 public:
  ColumnCounters(Index order, Index mode, const std::vector<std::vector<Index>>& others)
      : mode_(mode), others_(&others), counters_(static_cast<size_t>(order), 0) {}

  Index at(Index k) const { return counters_[static_cast<size_t>(k)]; }

  void advance() {
    for (size_t k = 0; k < counters_.size(); ++k) {
      if (static_cast<Index>(k) == mode_) continue;
      if (++counters_[k] < static_cast<Index>((*others_)[k].size())) return;
      counters_[k] = 0;
    }
  }

 private:
  Index mode_;
  const std::vector<std::vector<Index>>* others_;
  std::vector<Index> counters_;
};

}  // namespace

Eigen::MatrixXd low_rank_fiber_block(const TuckerTensor& v, Index mode,
                                     const std::vector<std::vector<Index>>& others) {
  const Index d = v.order();
  if (mode < 0 || mode >= d) throw std::invalid_argument("fiber mode out of range");
  DenseTensor t = v.core;
  for (Index k = 0; k < d; ++k) {
    if (k == mode) continue;
    const auto& idx = others[static_cast<size_t>(k)];
    const auto& u = v.factors[static_cast<size_t>(k)];
    Eigen::MatrixXd rows(static_cast<Index>(idx.size()), u.cols());
    for (size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] < 0 || idx[j] >= u.rows()) {
        throw std::invalid_argument("fiber index out of range at mode " + std::to_string(k));
      }
      rows.row(static_cast<Index>(j)) = u.row(idx[j]);
    }
    t = mode_product(t, rows, k);
  }
  return v.factors[static_cast<size_t>(mode)] * unfold(t, mode);
}

StencilRhsOracle::StencilRhsOracle(TuckerTensor v, std::vector<LinearTerm> terms,
                                   std::function<double(double)> pointwise,
                                   std::vector<bool> periodic, std::vector<bool> mask_boundary,
                                   std::vector<Index> halo)
    : FiberOracle(shape_of(v), std::move(halo)),
      v_(std::move(v)),
      terms_(std::move(terms)),
      pointwise_(std::move(pointwise)),
      periodic_(std::move(periodic)),
      mask_(std::move(mask_boundary)) {
  if (periodic_.size() != static_cast<size_t>(order()) ||
      mask_.size() != static_cast<size_t>(order())) {
    throw std::invalid_argument("one periodic and one mask flag per mode are required");
  }
}

Eigen::MatrixXd StencilRhsOracle::eval_block(Index mode,
                                             const std::vector<std::vector<Index>>& others) const {
  const Index d = order();
  const Index rows = shape()[static_cast<size_t>(mode)];
  Index cols = 1;
  for (Index k = 0; k < d; ++k) {
    if (k != mode) cols *= static_cast<Index>(others[static_cast<size_t>(k)].size());
  }

  Eigen::MatrixXd out;
  if (pointwise_) {
    out = low_rank_fiber_block(v_, mode, others);
    if (pointwise_bulk_) {
      pointwise_bulk_(out);
    } else {
      out = out.unaryExpr(pointwise_);
    }
  } else {
    out = Eigen::MatrixXd::Zero(rows, cols);
  }

  for (const auto& term : terms_) {
    // Fold each sampled-mode operator into that mode's factor rows: the fiber
    // block of (v x_k M_k) restricted to indices q is built from the rows
    // (M_k U_k)(q, :).  Out-of-band operator entries only occur in one-sided
    // boundary rows of masked modes, whose outputs are zeroed below, so this
    // computes the same map as sampling the solution over the declared halo.
    const Eigen::MatrixXd* target_op = nullptr;
    DenseTensor t = v_.core;
    for (Index k = 0; k < d; ++k) {
      const Eigen::MatrixXd* op = nullptr;
      for (const auto& [ko, m] : term.ops) {
        if (ko == k) op = m;
      }
      if (k == mode) {
        target_op = op;
        continue;
      }
      const auto& idx = others[static_cast<size_t>(k)];
      const auto& u = v_.factors[static_cast<size_t>(k)];
      Eigen::MatrixXd full;
      if (op) full = (*op) * u;
      const Eigen::MatrixXd& src = op ? full : u;
      Eigen::MatrixXd picked(static_cast<Index>(idx.size()), src.cols());
      for (size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] < 0 || idx[j] >= src.rows()) {
          throw std::invalid_argument("fiber index out of range at mode " + std::to_string(k));
        }
        picked.row(static_cast<Index>(j)) = src.row(idx[j]);
      }
      t = mode_product(t, picked, k);
    }
    const auto& u_mode = v_.factors[static_cast<size_t>(mode)];
    if (target_op) {
      out.noalias() += term.coeff * ((*target_op * u_mode) * unfold(t, mode));
    } else {
      out.noalias() += term.coeff * (u_mode * unfold(t, mode));
    }
  }

  // Masked (Dirichlet) modes: the right-hand side vanishes at any boundary
  // coordinate, so one-sided closures and clamped halo reads never surface.
  if (mask_[static_cast<size_t>(mode)]) {
    out.row(0).setZero();
    out.row(rows - 1).setZero();
  }
  ColumnCounters counters(d, mode, others);
  for (Index c = 0; c < cols; ++c, counters.advance()) {
    for (Index k = 0; k < d; ++k) {
      if (k == mode || !mask_[static_cast<size_t>(k)]) continue;
      const Index q = others[static_cast<size_t>(k)][static_cast<size_t>(counters.at(k))];
      if (q == 0 || q == shape()[static_cast<size_t>(k)] - 1) {
        out.col(c).setZero();
        break;
      }
    }
  }
  return out;
}

DenseTensor apply_stencil_rhs(const DenseTensor& v, const std::vector<LinearTerm>& terms,
                              const std::function<double(double)>& pointwise,
                              const std::vector<bool>& mask_boundary) {
  DenseTensor out(v.shape());
  if (pointwise) {
    out.as_vector() = v.as_vector().unaryExpr(pointwise);
  }
  using RowMajorMap =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using MutableRowMajorMap =
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  for (const auto& term : terms) {
    // Banded operators applied sparsely, with the last product accumulated
    // straight into the output: full-order tensors are memory-bound, so this
    // avoids materializing one temporary per term.
    bool first = true;
    DenseTensor t;
    for (size_t j = 0; j + 1 < term.ops.size(); ++j) {
      const Eigen::SparseMatrix<double> s = term.ops[j].second->sparseView();
      t = mode_product(first ? v : t, s, term.ops[j].first);
      first = false;
    }
    if (term.ops.empty()) {
      out.as_vector() += term.coeff * (first ? v : t).as_vector();
      continue;
    }
    const auto& [mode, op] = term.ops.back();
    const Eigen::SparseMatrix<double> s = op->sparseView();
    const DenseTensor& src = first ? v : t;
    const Index inner = src.stride(mode);
    const Index n_mode = src.dim(mode);
    const Index outer = src.size() / (n_mode * inner);
    if (inner == 1) {
      RowMajorMap in(src.data(), outer, n_mode);
      MutableRowMajorMap dst(out.data(), outer, n_mode);
      dst += term.coeff * (in * s.transpose());
    } else {
      for (Index o = 0; o < outer; ++o) {
        RowMajorMap in(src.data() + o * n_mode * inner, n_mode, inner);
        MutableRowMajorMap dst(out.data() + o * n_mode * inner, n_mode, inner);
        dst += term.coeff * (s * in);
      }
    }
  }
  for (Index k = 0; k < v.order(); ++k) {
    if (!mask_boundary[static_cast<size_t>(k)]) continue;
    const Index n = v.dim(k);
    const Index inner = v.stride(k);
    const Index outer = v.size() / (n * inner);
    for (Index o = 0; o < outer; ++o) {
      double* base = out.data() + o * n * inner;
      for (Index i = 0; i < inner; ++i) {
        base[i] = 0.0;
        base[(n - 1) * inner + i] = 0.0;
      }
    }
  }
  return out;
}

}  // namespace tuckercross::models
