#include "tuckercross/models/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "tuckercross/errors.hpp"
#include "tuckercross/tensor_ops.hpp"

namespace tuckercross::models {

namespace {

// Contracts the core with one row vector per mode.
double contract(const DenseTensor& core, const std::vector<Eigen::RowVectorXd>& vs) {
  DenseTensor t = core;
  for (Index k = 0; k < core.order(); ++k) {
    t = mode_product(t, vs[static_cast<size_t>(k)], k);
  }
  return t[0];
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::MatrixXd> gaussian_moments(const FokkerPlanckParams& params,
                                                             double t) {
  const Eigen::MatrixXd stationary = params.diffusion / (2.0 * params.alpha);
  Eigen::VectorXd mean = params.mean0 * std::exp(-params.alpha * t);
  Eigen::MatrixXd cov =
      stationary + (params.cov0 - stationary) * std::exp(-2.0 * params.alpha * t);
  return {std::move(mean), std::move(cov)};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> quadrature_moments(const TuckerTensor& density,
                                                               const std::vector<Grid1D>& grids) {
  const Index d = density.order();
  if (static_cast<Index>(grids.size()) != d) {
    throw std::invalid_argument("one grid per mode is required");
  }
  // Per-mode contraction rows: plain mass, first moment, second moment.
  std::vector<Eigen::RowVectorXd> mass_rows(static_cast<size_t>(d));
  std::vector<Eigen::RowVectorXd> x_rows(static_cast<size_t>(d));
  std::vector<Eigen::RowVectorXd> xx_rows(static_cast<size_t>(d));
  for (Index k = 0; k < d; ++k) {
    const auto& g = grids[static_cast<size_t>(k)];
    const auto& u = density.factors[static_cast<size_t>(k)];
    if (u.rows() != g.size()) throw std::invalid_argument("factor rows do not match the grid");
    const Eigen::VectorXd w = trapezoid_weights(g);
    mass_rows[static_cast<size_t>(k)] = w.transpose() * u;
    x_rows[static_cast<size_t>(k)] = (w.cwiseProduct(g.points)).transpose() * u;
    xx_rows[static_cast<size_t>(k)] =
        (w.cwiseProduct(g.points.cwiseProduct(g.points))).transpose() * u;
  }

  const double mass = contract(density.core, mass_rows);
  if (!(mass > 0.0)) {
    throw DegenerateDensityError("density integrates to a nonpositive mass");
  }

  Eigen::VectorXd mean(d);
  for (Index i = 0; i < d; ++i) {
    auto rows = mass_rows;
    rows[static_cast<size_t>(i)] = x_rows[static_cast<size_t>(i)];
    mean(i) = contract(density.core, rows) / mass;
  }
  Eigen::MatrixXd cov(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      auto rows = mass_rows;
      if (i == j) {
        rows[static_cast<size_t>(i)] = xx_rows[static_cast<size_t>(i)];
      } else {
        rows[static_cast<size_t>(i)] = x_rows[static_cast<size_t>(i)];
        rows[static_cast<size_t>(j)] = x_rows[static_cast<size_t>(j)];
      }
      const double second = contract(density.core, rows) / mass;
      cov(i, j) = second - mean(i) * mean(j);
      cov(j, i) = cov(i, j);
    }
  }
  return {std::move(mean), std::move(cov)};
}

Eigen::MatrixXd squared_marginal_34(const TuckerTensor& v, const std::vector<Grid1D>& grids) {
  if (v.order() != 4 || grids.size() != 4) {
    throw std::invalid_argument("a 4-D field with four grids is required");
  }
  const auto& u3 = v.factors[2];
  const auto& u4 = v.factors[3];
  const Index n3 = u3.rows();
  const Index n4 = u4.rows();
  const Index r1 = v.core.dim(0);
  const Index r2 = v.core.dim(1);

  Eigen::MatrixXd g1 = v.factors[0].transpose() *
                       trapezoid_weights(grids[0]).asDiagonal() * v.factors[0];
  Eigen::MatrixXd g2 = v.factors[1].transpose() *
                       trapezoid_weights(grids[1]).asDiagonal() * v.factors[1];

  // Expand the trailing modes onto the grid once; the leading modes stay in
  // coefficient space and are contracted through the Gram matrices.
  DenseTensor p = mode_product(mode_product(v.core, u3, 2), u4, 3);
  Eigen::MatrixXd out(n3, n4);
  Eigen::MatrixXd t(r1, r2);
  std::vector<Index> idx(4, 0);
  for (Index a = 0; a < n3; ++a) {
    for (Index b = 0; b < n4; ++b) {
      idx[2] = a;
      idx[3] = b;
      for (Index i = 0; i < r1; ++i) {
        idx[0] = i;
        for (Index j = 0; j < r2; ++j) {
          idx[1] = j;
          t(i, j) = p.at(std::span<const Index>(idx.data(), 4));
        }
      }
      out(a, b) = (g1 * t * g2).cwiseProduct(t).sum();
    }
  }
  return out;
}

FootprintReport memory_footprint(Index n, Index d, Index r_prime) {
  if (n < 1 || d < 1 || r_prime < 1) throw std::invalid_argument("counts must be positive");
  FootprintReport rep;
  std::int64_t dense = 1;
  std::int64_t fiber = 1;  // r'^(d-1)
  std::int64_t core = r_prime;
  for (Index k = 0; k < d; ++k) dense *= n;
  for (Index k = 0; k + 1 < d; ++k) fiber *= r_prime;
  for (Index k = 0; k + 1 < d; ++k) core *= r_prime;
  rep.dense = dense;
  rep.cross = static_cast<std::int64_t>(d) * n * fiber + core;
  rep.ratio = static_cast<double>(rep.dense) / static_cast<double>(rep.cross);
  return rep;
}

}  // namespace tuckercross::models
