#include "tuckercross/tensor_ops.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tuckercross {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using MutableRowMajorMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void check_mode(const DenseTensor& t, Index mode) {
  if (mode < 0 || mode >= t.order()) {
    throw std::invalid_argument("mode " + std::to_string(mode) + " out of range for order " +
                                std::to_string(t.order()) + " tensor");
  }
}

// Advances an odometer over the modes != `mode` with the lowest mode varying
// fastest; returns the flat base offset for each column of the unfolding.
class ColumnWalker {
 public:
  ColumnWalker(const DenseTensor& t, Index mode) {
    for (Index k = 0; k < t.order(); ++k) {
      if (k == mode) continue;
      extents_.push_back(t.dim(k));
      strides_.push_back(t.stride(k));
    }
    counters_.assign(extents_.size(), 0);
  }

  Index offset() const { return offset_; }

  void advance() {
    for (size_t j = 0; j < extents_.size(); ++j) {
      ++counters_[j];
      offset_ += strides_[j];
      if (counters_[j] < extents_[j]) return;
      offset_ -= counters_[j] * strides_[j];
      counters_[j] = 0;
    }
  }

 private:
  std::vector<Index> extents_;
  std::vector<Index> strides_;
  std::vector<Index> counters_;
  Index offset_ = 0;
};

}  // namespace

Eigen::MatrixXd unfold(const DenseTensor& t, Index mode) {
  check_mode(t, mode);
  const Index rows = t.dim(mode);
  const Index cols = t.size() / rows;
  const Index mode_stride = t.stride(mode);
  Eigen::MatrixXd m(rows, cols);
  ColumnWalker walker(t, mode);
  const double* data = t.data();
  for (Index c = 0; c < cols; ++c, walker.advance()) {
    const double* base = data + walker.offset();
    for (Index i = 0; i < rows; ++i) m(i, c) = base[i * mode_stride];
  }
  return m;
}

DenseTensor fold(const Eigen::MatrixXd& m, Index mode, const std::vector<Index>& shape) {
  DenseTensor t(shape);
  check_mode(t, mode);
  const Index rows = t.dim(mode);
  const Index cols = t.size() / rows;
  if (m.rows() != rows || m.cols() != cols) {
    throw std::invalid_argument("matrix of size " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " is inconsistent with mode-" +
                                std::to_string(mode) + " unfolding of the requested shape");
  }
  const Index mode_stride = t.stride(mode);
  ColumnWalker walker(t, mode);
  double* data = t.data();
  for (Index c = 0; c < cols; ++c, walker.advance()) {
    double* base = data + walker.offset();
    for (Index i = 0; i < rows; ++i) base[i * mode_stride] = m(i, c);
  }
  return t;
}

DenseTensor mode_product(const DenseTensor& t, const Eigen::MatrixXd& m, Index mode) {
  check_mode(t, mode);
  if (m.cols() != t.dim(mode)) {
    throw std::invalid_argument("matrix has " + std::to_string(m.cols()) +
                                " columns but mode " + std::to_string(mode) + " has extent " +
                                std::to_string(t.dim(mode)));
  }
  std::vector<Index> out_shape = t.shape();
  out_shape[static_cast<size_t>(mode)] = m.rows();
  DenseTensor out(out_shape);

  // Row-major layout: for fixed leading indices, (i_mode, trailing) is a
  // contiguous (N_mode x inner) row-major block, so each slab is one GEMM.
  const Index inner = t.stride(mode);
  const Index n_mode = t.dim(mode);
  const Index n_out = m.rows();
  const Index outer = t.size() / (n_mode * inner);
  if (inner == 1) {
    // Last mode: the tensor is an (outer x N_mode) row-major matrix, so the
    // whole product is a single GEMM instead of `outer` tiny ones.
    RowMajorMap in(t.data(), outer, n_mode);
    MutableRowMajorMap dst(out.data(), outer, n_out);
    dst.noalias() = in * m.transpose();
    return out;
  }
  for (Index o = 0; o < outer; ++o) {
    RowMajorMap in(t.data() + o * n_mode * inner, n_mode, inner);
    MutableRowMajorMap dst(out.data() + o * n_out * inner, n_out, inner);
    dst.noalias() = m * in;
  }
  return out;
}

DenseTensor mode_product(const DenseTensor& t, const Eigen::SparseMatrix<double>& m, Index mode) {
  check_mode(t, mode);
  if (m.cols() != t.dim(mode)) {
    throw std::invalid_argument("matrix has " + std::to_string(m.cols()) +
                                " columns but mode " + std::to_string(mode) + " has extent " +
                                std::to_string(t.dim(mode)));
  }
  std::vector<Index> out_shape = t.shape();
  out_shape[static_cast<size_t>(mode)] = m.rows();
  DenseTensor out(out_shape);

  const Index inner = t.stride(mode);
  const Index n_mode = t.dim(mode);
  const Index n_out = m.rows();
  const Index outer = t.size() / (n_mode * inner);
  if (inner == 1) {
    RowMajorMap in(t.data(), outer, n_mode);
    MutableRowMajorMap dst(out.data(), outer, n_out);
    dst = in * m.transpose();
    return out;
  }
  for (Index o = 0; o < outer; ++o) {
    RowMajorMap in(t.data() + o * n_mode * inner, n_mode, inner);
    MutableRowMajorMap dst(out.data() + o * n_out * inner, n_out, inner);
    dst = m * in;
  }
  return out;
}

double frobenius_norm(const DenseTensor& t) { return t.as_vector().norm(); }

double inner(const DenseTensor& a, const DenseTensor& b) {
  if (a.shape() != b.shape()) throw std::invalid_argument("shape mismatch in inner product");
  return a.as_vector().dot(b.as_vector());
}

DenseTensor subtensor(const DenseTensor& t, const std::vector<Selector>& selectors) {
  if (static_cast<Index>(selectors.size()) != t.order()) {
    throw std::invalid_argument("one selector per mode is required");
  }
  const Index d = t.order();
  std::vector<std::vector<Index>> picks(static_cast<size_t>(d));
  std::vector<Index> out_shape(static_cast<size_t>(d));
  for (Index k = 0; k < d; ++k) {
    auto& pk = picks[static_cast<size_t>(k)];
    const auto& sel = selectors[static_cast<size_t>(k)];
    if (sel.has_value()) {
      pk = *sel;
      if (pk.empty()) throw std::invalid_argument("empty selector at mode " + std::to_string(k));
      for (Index i : pk) {
        if (i < 0 || i >= t.dim(k)) {
          throw std::invalid_argument("selector index out of range at mode " + std::to_string(k));
        }
      }
    } else {
      pk.resize(static_cast<size_t>(t.dim(k)));
      std::iota(pk.begin(), pk.end(), Index{0});
    }
    out_shape[static_cast<size_t>(k)] = static_cast<Index>(pk.size());
  }

  DenseTensor out(out_shape);
  std::vector<Index> counters(static_cast<size_t>(d), 0);
  const double* src = t.data();
  double* dst = out.data();
  Index src_offset = 0;
  for (Index k = 0; k < d; ++k) src_offset += picks[static_cast<size_t>(k)][0] * t.stride(k);
  for (Index flat = 0; flat < out.size(); ++flat) {
    dst[flat] = src[src_offset];
    // Odometer in row-major order: the last mode varies fastest.
    for (Index k = d; k-- > 0;) {
      auto& c = counters[static_cast<size_t>(k)];
      const auto& pk = picks[static_cast<size_t>(k)];
      src_offset -= pk[static_cast<size_t>(c)] * t.stride(k);
      ++c;
      if (c < static_cast<Index>(pk.size())) {
        src_offset += pk[static_cast<size_t>(c)] * t.stride(k);
        break;
      }
      c = 0;
      src_offset += pk[0] * t.stride(k);
    }
  }
  return out;
}

}  // namespace tuckercross
