#include "tuckercross/svd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tuckercross {

namespace {

// Flips singular-vector pairs so the largest-magnitude entry of each left
// vector is positive; keeps warm starts and diagnostics reproducible.
void normalize_signs(Eigen::MatrixXd& u, Eigen::MatrixXd* v) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    if (u(imax, j) < 0.0) {
      u.col(j) = -u.col(j);
      if (v != nullptr && j < v->cols()) v->col(j) = -v->col(j);
    }
  }
}

// BDCSVD may return zero singular-vector columns once trailing singular
// values underflow; complete them from the coordinate basis so the returned
// factors stay orthonormal.
void complete_orthonormal(Eigen::MatrixXd& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    if (u.col(j).norm() > 0.5) continue;
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
      Eigen::VectorXd cand = Eigen::VectorXd::Unit(u.rows(), k);
      for (Eigen::Index i = 0; i < u.cols(); ++i) {
        if (i != j) cand -= u.col(i).dot(cand) * u.col(i);
      }
      const double nrm = cand.norm();
      if (nrm > 0.1) {
        u.col(j) = cand / nrm;
        break;
      }
    }
  }
}

}  // namespace

TruncatedSvd truncated_svd(const Eigen::MatrixXd& m, Eigen::Index r) {
  const Eigen::Index rmax = std::min(m.rows(), m.cols());
  if (r < 1 || r > rmax) {
    throw std::invalid_argument("truncation rank " + std::to_string(r) +
                                " out of range [1, " + std::to_string(rmax) + "]");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.u = svd.matrixU().leftCols(r);
  out.values = svd.singularValues().head(r);
  out.v = svd.matrixV().leftCols(r);
  complete_orthonormal(out.u);
  complete_orthonormal(out.v);
  normalize_signs(out.u, &out.v);
  return out;
}

TruncatedSvd truncated_left_svd(const Eigen::MatrixXd& m, Eigen::Index r, bool gram_for_wide) {
  const Eigen::Index rmax = std::min(m.rows(), m.cols());
  if (r < 1 || r > rmax) {
    throw std::invalid_argument("truncation rank " + std::to_string(r) +
                                " out of range [1, " + std::to_string(rmax) + "]");
  }
  TruncatedSvd out;
  if (gram_for_wide && m.cols() >= 32 * m.rows()) {
    const Eigen::MatrixXd gram = m * m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    out.u.resize(m.rows(), r);
    out.values.resize(r);
    for (Eigen::Index j = 0; j < r; ++j) {
      const Eigen::Index src = m.rows() - 1 - j;  // eigenvalues come ascending
      out.u.col(j) = eig.eigenvectors().col(src);
      out.values(j) = std::sqrt(std::max(eig.eigenvalues()(src), 0.0));
    }
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    out.u = svd.matrixU().leftCols(r);
    out.values = svd.singularValues().head(r);
  }
  complete_orthonormal(out.u);
  normalize_signs(out.u, nullptr);
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues();
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double rcond) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rcond * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace tuckercross
