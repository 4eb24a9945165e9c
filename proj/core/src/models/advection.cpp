#include "tuckercross/models/advection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tuckercross::models {

AdvectionParams default_advection_params() {
  AdvectionParams p;
  p.velocity = [](double t) {
    Eigen::VectorXd b(4);
    b << -std::sin(t), std::cos(t), -std::sin(std::numbers::pi + t),
        std::cos(std::numbers::pi + t);
    return b;
  };
  p.source_amplitude = 0.1;
  return p;
}

AdvectionModel::AdvectionModel(AdvectionParams params, std::vector<Grid1D> grids)
    : params_(std::move(params)), grids_(std::move(grids)) {
  for (const auto& g : grids_) {
    if (g.boundary != Boundary::Periodic) {
      throw std::invalid_argument("advection grids must be periodic");
    }
  }
  periodic_.assign(grids_.size(), true);
  mask_.assign(grids_.size(), false);
  first_.reserve(grids_.size());
  for (const auto& g : grids_) first_.push_back(diff_matrix(g, 1));
}

std::vector<Index> AdvectionModel::shape() const {
  std::vector<Index> s;
  s.reserve(grids_.size());
  for (const auto& g : grids_) s.push_back(g.size());
  return s;
}

double AdvectionModel::source(double v) const {
  return -params_.source_amplitude * v / (1.0 + v * v);
}

std::vector<LinearTerm> AdvectionModel::terms_at(double t) const {
  const Eigen::VectorXd b = params_.velocity(t);
  if (b.size() != static_cast<Index>(grids_.size())) {
    throw std::invalid_argument("velocity law dimension does not match the grids");
  }
  std::vector<LinearTerm> terms;
  for (size_t i = 0; i < grids_.size(); ++i) {
    terms.push_back({-b(static_cast<Index>(i)), {{static_cast<Index>(i), &first_[i]}}});
  }
  return terms;
}

std::unique_ptr<FiberOracle> AdvectionModel::make_oracle(double t, const TuckerTensor& v) const {
  const double amp = params_.source_amplitude;
  auto oracle = std::make_unique<StencilRhsOracle>(
      v, terms_at(t), [amp](double x) { return -amp * x / (1.0 + x * x); }, periodic_, mask_,
      std::vector<Index>(grids_.size(), 1));
  oracle->set_pointwise_bulk([amp](Eigen::MatrixXd& m) {
    m.array() = -amp * m.array() / (1.0 + m.array().square());
  });
  return oracle;
}

DenseTensor AdvectionModel::dense_rhs(double t, const DenseTensor& v) const {
  const double amp = params_.source_amplitude;
  DenseTensor out = apply_stencil_rhs(v, terms_at(t), nullptr, mask_);
  // Vectorized source term; no mode is masked, so adding it afterwards is
  // equivalent to passing it through the pointwise hook.
  const auto x = v.as_vector().array();
  out.as_vector().array() += -amp * x / (1.0 + x.square());
  return out;
}

DenseTensor advection_initial_condition(const std::vector<Grid1D>& grids) {
  if (grids.size() != 4) throw std::invalid_argument("four grids are required");
  std::vector<Index> shape;
  for (const auto& g : grids) shape.push_back(g.size());
  DenseTensor out(shape);
  auto sq = [](double x) { return x * x; };
  std::vector<Index> idx(4, 0);
  for (Index flat = 0; flat < out.size(); ++flat) {
    const double x1 = grids[0].points(idx[0]);
    const double x2 = grids[1].points(idx[1]);
    const double x3 = grids[2].points(idx[2]);
    const double x4 = grids[3].points(idx[3]);
    const double f = std::exp(-sq(x1 - 0.5) - sq(x1 + x2 / 2 - 0.5) - sq(x3 - 0.5) -
                              sq(x3 + x4 / 2 - 0.5));
    const double g = std::exp(-sq(x1 + 0.5) - sq(x2 + 0.5) - sq(x3 + 0.5) - sq(x4 + 0.5));
    out[flat] = f + g;
    for (Index k = 4; k-- > 0;) {
      if (++idx[static_cast<size_t>(k)] < out.dim(k)) break;
      idx[static_cast<size_t>(k)] = 0;
    }
  }
  return out;
}

}  // namespace tuckercross::models
