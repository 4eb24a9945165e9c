#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "tuckercross/dense_tensor.hpp"
#include "tuckercross/fiber_oracle.hpp"
#include "tuckercross/models/grid.hpp"

namespace tuckercross::models {

/// Analytic 3-D benchmark tensor sampled on a grid.
struct ToyTarget {
  std::vector<Grid1D> grids;
  std::function<double(std::span<const Index>)> entry;

  std::vector<Index> shape() const;
  std::unique_ptr<FiberOracle> make_oracle() const;
  DenseTensor densify() const;
};

/// exp(-(x1 x2 x3)^2) on [-1,1]^3, n points per mode (endpoints included).
ToyTarget exp_product_target(Index n = 100);

/// (x1^b + x2^b + x3^b)^(-1/b) on [1,300] x [1,400] x [1,300].
ToyTarget power_mean_target(double b, std::vector<Index> n = {300, 400, 300});

}  // namespace tuckercross::models
