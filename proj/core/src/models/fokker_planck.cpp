#include "tuckercross/models/fokker_planck.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tuckercross::models {

FokkerPlanckParams default_fokker_planck_params() {
  FokkerPlanckParams p;
  p.alpha = 0.75;
  p.diffusion = Eigen::MatrixXd::Identity(4, 4);
  p.mean0 = Eigen::Vector4d(1.5, 0.6, -0.3, -1.2);
  p.cov0 = Eigen::MatrixXd::Constant(4, 4, 0.5);
  p.cov0.diagonal().setOnes();
  return p;
}

FokkerPlanckModel::FokkerPlanckModel(FokkerPlanckParams params, std::vector<Grid1D> grids)
    : params_(std::move(params)), grids_(std::move(grids)) {
  const Index d = static_cast<Index>(grids_.size());
  if (params_.diffusion.rows() != d || params_.diffusion.cols() != d) {
    throw std::invalid_argument("diffusion matrix size does not match the number of grids");
  }
  if (!params_.diffusion.isApprox(params_.diffusion.transpose(), 1e-12)) {
    throw std::invalid_argument("diffusion matrix must be symmetric");
  }
  for (const auto& g : grids_) {
    if (g.boundary != Boundary::Dirichlet) {
      throw std::invalid_argument("density grids must be Dirichlet");
    }
  }
  periodic_.assign(static_cast<size_t>(d), false);
  mask_.assign(static_cast<size_t>(d), true);

  combined_.reserve(static_cast<size_t>(d));
  first_.reserve(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const auto& g = grids_[static_cast<size_t>(i)];
    const Eigen::MatrixXd d1 = diff_matrix(g, 1);
    const Eigen::MatrixXd d2 = diff_matrix(g, 2);
    // -d/dx_i (f_i p) with f_i = -alpha x_i, plus the diagonal diffusion term.
    combined_.push_back(Eigen::MatrixXd(params_.alpha * (d1 * g.points.asDiagonal()) +
                                        0.5 * params_.diffusion(i, i) * d2));
    first_.push_back(d1);
  }
  for (Index i = 0; i < d; ++i) {
    terms_.push_back({1.0, {{i, &combined_[static_cast<size_t>(i)]}}});
  }
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      if (params_.diffusion(i, j) == 0.0) continue;
      terms_.push_back({params_.diffusion(i, j),
                        {{i, &first_[static_cast<size_t>(i)]}, {j, &first_[static_cast<size_t>(j)]}}});
    }
  }
}

std::vector<Index> FokkerPlanckModel::shape() const {
  std::vector<Index> s;
  s.reserve(grids_.size());
  for (const auto& g : grids_) s.push_back(g.size());
  return s;
}

std::unique_ptr<FiberOracle> FokkerPlanckModel::make_oracle(double /*t*/,
                                                            const TuckerTensor& v) const {
  return std::make_unique<StencilRhsOracle>(v, terms_, nullptr, periodic_, mask_,
                                            std::vector<Index>(grids_.size(), 1));
}

DenseTensor FokkerPlanckModel::dense_rhs(double /*t*/, const DenseTensor& v) const {
  return apply_stencil_rhs(v, terms_, nullptr, mask_);
}

DenseTensor gaussian_density(const std::vector<Grid1D>& grids, const Eigen::VectorXd& mean,
                             const Eigen::MatrixXd& cov) {
  const Index d = static_cast<Index>(grids.size());
  if (mean.size() != d || cov.rows() != d || cov.cols() != d) {
    throw std::invalid_argument("moment dimensions do not match the grids");
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance must be positive definite");
  }
  const Eigen::MatrixXd prec = llt.solve(Eigen::MatrixXd::Identity(d, d));
  double det = 1.0;
  for (Index i = 0; i < d; ++i) det *= llt.matrixL()(i, i) * llt.matrixL()(i, i);
  const double norm =
      1.0 / (std::pow(2.0 * std::numbers::pi, static_cast<double>(d) / 2.0) * std::sqrt(det));

  std::vector<Index> shape;
  for (const auto& g : grids) shape.push_back(g.size());
  DenseTensor out(shape);
  std::vector<Index> idx(static_cast<size_t>(d), 0);
  Eigen::VectorXd x(d);
  for (Index flat = 0; flat < out.size(); ++flat) {
    for (Index k = 0; k < d; ++k) {
      x(k) = grids[static_cast<size_t>(k)].points(idx[static_cast<size_t>(k)]) - mean(k);
    }
    out[flat] = norm * std::exp(-0.5 * x.dot(prec * x));
    for (Index k = d; k-- > 0;) {
      if (++idx[static_cast<size_t>(k)] < out.dim(k)) break;
      idx[static_cast<size_t>(k)] = 0;
    }
  }
  return out;
}

}  // namespace tuckercross::models
