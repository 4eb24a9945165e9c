// Microbenchmarks for the hot paths: mode products, unfolding, greedy index
// selection, cross approximation, and one integration step.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "tuckercross/cross.hpp"
#include "tuckercross/deim.hpp"
#include "tuckercross/dense_tensor.hpp"
#include "tuckercross/dlra.hpp"
#include "tuckercross/models/fokker_planck.hpp"
#include "tuckercross/models/grid.hpp"
#include "tuckercross/models/toy.hpp"
#include "tuckercross/svd.hpp"
#include "tuckercross/tensor_ops.hpp"

namespace {

using namespace tuckercross;

DenseTensor random_tensor(const std::vector<Index>& shape, std::mt19937& rng) {
  DenseTensor t(shape);
  std::normal_distribution<double> dist;
  for (Index i = 0; i < t.size(); ++i) t[i] = dist(rng);
  return t;
}

Eigen::MatrixXd random_matrix(Index rows, Index cols, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  }
  return m;
}

Eigen::MatrixXd random_orthonormal(Index rows, Index cols, std::mt19937& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rows, cols, rng));
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

void bm_mode_product(benchmark::State& state) {
  const Index n = state.range(0);
  std::mt19937 rng(1);
  const DenseTensor t = random_tensor({n, n, n}, rng);
  const Eigen::MatrixXd m = random_matrix(10, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mode_product(t, m, 1));
  }
}
BENCHMARK(bm_mode_product)->Arg(50)->Arg(100);

void bm_unfold(benchmark::State& state) {
  const Index n = state.range(0);
  std::mt19937 rng(2);
  const DenseTensor t = random_tensor({n, n, n}, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(unfold(t, 1));
  }
}
BENCHMARK(bm_unfold)->Arg(50)->Arg(100);

void bm_deim_indices(benchmark::State& state) {
  std::mt19937 rng(3);
  const Eigen::MatrixXd basis = random_orthonormal(state.range(0), 12, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(deim_indices(basis));
  }
}
BENCHMARK(bm_deim_indices)->Arg(100)->Arg(400);

void bm_deim_fs(benchmark::State& state) {
  const Index r = state.range(0);
  const auto target = models::exp_product_target(100);
  const DenseTensor dense = target.densify();
  const auto oracle = target.make_oracle();
  std::vector<Eigen::MatrixXd> guides;
  for (Index i = 0; i < 3; ++i) guides.push_back(truncated_svd(unfold(dense, i), r + 2).u);
  CrossConfig cfg;
  cfg.multirank = {r, r, r};
  for (auto _ : state) {
    benchmark::DoNotOptimize(deim_fs(*oracle, guides, cfg));
  }
}
BENCHMARK(bm_deim_fs)->Arg(4)->Arg(8);

void bm_hosvd(benchmark::State& state) {
  const Index r = state.range(0);
  const auto target = models::exp_product_target(100);
  const DenseTensor dense = target.densify();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hosvd(dense, {r, r, r}));
  }
}
BENCHMARK(bm_hosvd)->Arg(4)->Arg(8);

void bm_step_rk4(benchmark::State& state) {
  const Index n = state.range(0);
  const Index r = 5;
  std::vector<models::Grid1D> grids;
  for (int i = 0; i < 4; ++i) {
    grids.push_back(models::uniform_grid(-6.0, 6.0, n, models::Boundary::Dirichlet));
  }
  const models::FokkerPlanckModel model(models::default_fokker_planck_params(), grids);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1e-3;

  std::mt19937 rng(4);
  DlraState s;
  s.solution.core = random_tensor({r, r, r, r}, rng);
  s.rhs_multirank = {r, r, r, r};
  for (int i = 0; i < 4; ++i) {
    s.solution.factors.push_back(random_orthonormal(n, r, rng));
    s.rhs_guides.push_back(random_orthonormal(n, r + cfg.oversampling, rng));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_rk4(s, model, cfg));
  }
}
BENCHMARK(bm_step_rk4)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
