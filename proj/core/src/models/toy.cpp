#include "tuckercross/models/toy.hpp"

#include <cmath>
#include <stdexcept>

namespace tuckercross::models {

std::vector<Index> ToyTarget::shape() const {
  std::vector<Index> s;
  s.reserve(grids.size());
  for (const auto& g : grids) s.push_back(g.size());
  return s;
}

std::unique_ptr<FiberOracle> ToyTarget::make_oracle() const {
  return std::make_unique<CallableOracle>(shape(), entry);
}

DenseTensor ToyTarget::densify() const {
  DenseTensor out(shape());
  const Index d = static_cast<Index>(grids.size());
  std::vector<Index> idx(static_cast<size_t>(d), 0);
  for (Index flat = 0; flat < out.size(); ++flat) {
    out[flat] = entry(idx);
    for (Index k = d; k-- > 0;) {
      if (++idx[static_cast<size_t>(k)] < out.dim(k)) break;
      idx[static_cast<size_t>(k)] = 0;
    }
  }
  return out;
}

ToyTarget exp_product_target(Index n) {
  ToyTarget t;
  for (int k = 0; k < 3; ++k) t.grids.push_back(uniform_grid(-1.0, 1.0, n, Boundary::Dirichlet));
  auto grids = t.grids;
  t.entry = [grids](std::span<const Index> idx) {
    const double prod = grids[0].points(idx[0]) * grids[1].points(idx[1]) * grids[2].points(idx[2]);
    return std::exp(-prod * prod);
  };
  return t;
}

ToyTarget power_mean_target(double b, std::vector<Index> n) {
  if (n.size() != 3) throw std::invalid_argument("three per-mode sizes are required");
  ToyTarget t;
  t.grids.push_back(uniform_grid(1.0, 300.0, n[0], Boundary::Dirichlet));
  t.grids.push_back(uniform_grid(1.0, 400.0, n[1], Boundary::Dirichlet));
  t.grids.push_back(uniform_grid(1.0, 300.0, n[2], Boundary::Dirichlet));
  auto grids = t.grids;
  t.entry = [grids, b](std::span<const Index> idx) {
    const double s = std::pow(grids[0].points(idx[0]), b) + std::pow(grids[1].points(idx[1]), b) +
                     std::pow(grids[2].points(idx[2]), b);
    return std::pow(s, -1.0 / b);
  };
  return t;
}

}  // namespace tuckercross::models
