// Benchmark driver: static cross-approximation comparisons on analytic
// targets, dynamical low-rank runs of the drift-diffusion and transport
// models, and dense full-order references.  Emits plain CSV plus a sidecar
// metadata file with the fully resolved configuration.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kv_config.hpp"
#include "tuckercross/cross.hpp"
#include "tuckercross/dlra.hpp"
#include "tuckercross/errors.hpp"
#include "tuckercross/models/advection.hpp"
#include "tuckercross/models/decay.hpp"
#include "tuckercross/models/fokker_planck.hpp"
#include "tuckercross/models/grid.hpp"
#include "tuckercross/models/moments.hpp"
#include "tuckercross/models/toy.hpp"
#include "tuckercross/svd.hpp"
#include "tuckercross/tensor_ops.hpp"

namespace {

using namespace tuckercross;
namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RunContext {
  benchcli::KvConfig cfg;
  fs::path out_dir;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  std::ofstream open_csv(const std::string& name) const {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / name).string());
    return out;
  }

  void reject_unused_keys() const {
    const auto unused = cfg.unused_keys();
    if (!unused.empty()) {
      std::string msg = "unknown config keys:";
      for (const auto& k : unused) msg += " " + k;
      throw std::invalid_argument(msg);
    }
  }

  void write_metadata(const std::string& name) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    cfg.write_resolved((out_dir / name).string(), {"wall_clock_seconds = " + fmt(wall)});
  }
};

std::string time_series_header(Index d, Index r) {
  std::string h = "t,rel_error";
  for (Index i = 1; i <= d; ++i) h += ",rF_" + std::to_string(i);
  for (Index i = 1; i <= r; ++i) h += ",sv_" + std::to_string(i);
  h += ",entries_touched";
  return h;
}

void write_time_series_row(std::ofstream& out, double t, double rel_error,
                           const std::vector<Index>& rf, const Eigen::VectorXd& sv,
                           std::int64_t entries) {
  out << fmt(t) << "," << fmt(rel_error);
  for (Index r : rf) out << "," << r;
  for (Index i = 0; i < sv.size(); ++i) out << "," << fmt(sv(i));
  out << "," << entries << "\n";
}

Eigen::VectorXd leading_core_values(const TuckerTensor& tt) {
  return singular_values(unfold(tt.core, 0));
}

// ---------------------------------------------------------------------------
// cross-compare
// ---------------------------------------------------------------------------

int run_cross_compare(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const std::string target_name = cfg.get_string("target", "f1");
  const Index rank_min = cfg.get_int("rank_min", 2);
  const Index rank_max = cfg.get_int("rank_max", 12);
  const Index oversampling = cfg.get_int("oversampling", 2);
  const long long num_seeds = cfg.get_int("num_seeds", 1);
  const auto base_seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));

  models::ToyTarget target;
  if (target_name == "f1") {
    target = models::exp_product_target(cfg.get_int("n", 100));
  } else if (target_name == "f2") {
    const double b = cfg.get_double("b", 3.0);
    const auto shape_ll = cfg.get_int_list("shape", {300, 400, 300});
    std::vector<Index> shape(shape_ll.begin(), shape_ll.end());
    target = models::power_mean_target(b, shape);
  } else {
    throw std::invalid_argument("target must be f1 or f2, got: " + target_name);
  }

  if (rank_min < 1) throw std::invalid_argument("rank_min must be >= 1");
  if (rank_max < rank_min) throw std::invalid_argument("rank_max must be >= rank_min");
  if (oversampling < 0) throw std::invalid_argument("oversampling must be nonnegative");
  if (num_seeds < 1) throw std::invalid_argument("num_seeds must be >= 1");
  const auto shape = target.shape();
  for (Index n : shape) {
    if (rank_max + oversampling > n) {
      throw std::invalid_argument("rank_max + oversampling exceeds the smallest mode extent");
    }
  }
  ctx.reject_unused_keys();

  const Index d = static_cast<Index>(shape.size());
  const DenseTensor dense = target.densify();
  const auto oracle = target.make_oracle();

  // One SVD per unfolding at the widest width serves every rank in the sweep:
  // both the reference decomposition and the sampling guides are nested.
  std::vector<Eigen::MatrixXd> wide(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    wide[static_cast<size_t>(i)] = truncated_svd(unfold(dense, i), rank_max + oversampling).u;
  }
  DenseTensor ref_core_max = dense;
  for (Index i = 0; i < d; ++i) {
    ref_core_max =
        mode_product(ref_core_max, wide[static_cast<size_t>(i)].leftCols(rank_max).transpose(), i);
  }

  std::ofstream out = ctx.open_csv("cross_compare.csv");
  out << "rank,method,seed,abs_error,entries_touched\n";

  for (Index r = rank_min; r <= rank_max; ++r) {
    std::vector<Index> multirank(static_cast<size_t>(d), r);
    std::vector<Index> sel(static_cast<size_t>(r));
    for (Index i = 0; i < r; ++i) sel[static_cast<size_t>(i)] = i;

    TuckerTensor ref;
    ref.core = subtensor(ref_core_max, std::vector<Selector>(static_cast<size_t>(d), sel));
    for (Index i = 0; i < d; ++i) ref.factors.push_back(wide[static_cast<size_t>(i)].leftCols(r));
    out << r << ",hosvd," << base_seed << "," << fmt(absolute_error(ref, dense)) << ","
        << dense.size() << "\n";

    std::vector<Eigen::MatrixXd> guides;
    for (Index i = 0; i < d; ++i) {
      guides.push_back(wide[static_cast<size_t>(i)].leftCols(r + oversampling));
    }
    CrossConfig ccfg;
    ccfg.multirank = multirank;
    ccfg.oversampling = oversampling;
    oracle->reset_entry_counter();
    const CrossResult res = deim_fs(*oracle, guides, ccfg);
    out << r << ",deim_fs," << base_seed << "," << fmt(absolute_error(res.approx, dense)) << ","
        << oracle->entries_touched() << "\n";

    for (long long s = 0; s < num_seeds; ++s) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
      ccfg.seed = seed;
      oracle->reset_entry_counter();
      const IterativeResult it = deim_fs_iterative(*oracle, ccfg);
      out << r << ",deim_fs_iterative," << seed << ","
          << fmt(absolute_error(it.result.approx, dense)) << "," << oracle->entries_touched()
          << "\n";

      oracle->reset_entry_counter();
      const TuckerTensor sk = fstd(*oracle, multirank, seed);
      out << r << ",fstd," << seed << "," << fmt(absolute_error(sk, dense)) << ","
          << oracle->entries_touched() << "\n";
    }
  }
  out.close();
  ctx.write_metadata("cross_compare.meta.txt");
  return 0;
}

// ---------------------------------------------------------------------------
// fokker-planck
// ---------------------------------------------------------------------------

int run_fokker_planck(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const Index n = cfg.get_int("n", 31);
  const double half_width = cfg.get_double("half_width", 6.0);
  const Index r = cfg.get_int("r", 5);
  const Index r_f = cfg.get_int("r_f", 5);
  IntegratorConfig icfg;
  icfg.oversampling = cfg.get_int("oversampling", 2);
  icfg.dt = cfg.get_double("dt", 2e-3);
  icfg.t_end = cfg.get_double("t_end", 8.0);
  icfg.per_stage_refresh = cfg.get_bool("per_stage_refresh", true);
  icfg.reorthonormalize = cfg.get_bool("reorthonormalize", true);
  icfg.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  if (cfg.get_bool("adaptive", false)) {
    icfg.rhs_adaptivity = {cfg.get_double("eps_l", 1e-6), cfg.get_double("eps_u", 1e-4)};
  }
  const long long probe_every = cfg.get_int("probe_every", 50);

  if (n < 5) throw std::invalid_argument("n must be >= 5");
  if (r < 1 || r_f < 1) throw std::invalid_argument("ranks must be >= 1");
  if (probe_every < 1) throw std::invalid_argument("probe_every must be >= 1");
  if (icfg.t_end < 0.0) throw std::invalid_argument("t_end must be nonnegative");
  icfg.validate();
  ctx.reject_unused_keys();

  const models::FokkerPlanckParams params = models::default_fokker_planck_params();
  std::vector<models::Grid1D> grids;
  for (int i = 0; i < 4; ++i) {
    grids.push_back(models::uniform_grid(-half_width, half_width, n, models::Boundary::Dirichlet));
  }
  models::FokkerPlanckParams owned = params;
  const models::FokkerPlanckModel model(std::move(owned), grids);

  const DenseTensor v0_dense = models::gaussian_density(grids, params.mean0, params.cov0);
  const TuckerTensor v0 = initial_tucker(v0_dense, std::vector<Index>(4, r));

  auto truth_at = [&](double t) {
    const auto [mean, cov] = models::gaussian_moments(params, t);
    return models::gaussian_density(grids, mean, cov);
  };

  std::ofstream out = ctx.open_csv("fokker_planck.csv");
  out << time_series_header(4, r) << "\n";

  DlraState state = make_initial_state(model, v0, std::vector<Index>(4, r_f), icfg);
  write_time_series_row(out, 0.0, relative_error(state.solution, v0_dense), state.rhs_multirank,
                        leading_core_values(state.solution), 0);

  std::int64_t cumulative = 0;
  long long step_index = 0;
  const auto total_steps = static_cast<long long>(std::llround(icfg.t_end / icfg.dt));
  integrate(state, model, icfg, [&](const DlraState& s, const StepStats& stats) {
    ++step_index;
    cumulative += stats.entries_touched;
    if (step_index % probe_every == 0 || step_index == total_steps) {
      write_time_series_row(out, s.t, relative_error(s.solution, truth_at(s.t)),
                            stats.rhs_multirank, leading_core_values(s.solution), cumulative);
    }
  });
  out.close();

  const auto [mean, cov] = models::quadrature_moments(state.solution, grids);
  const auto [mean_ref, cov_ref] = models::gaussian_moments(params, state.t);
  std::ofstream mout = ctx.open_csv("fokker_planck_moments.csv");
  mout << "quantity,i,j,computed,analytic\n";
  for (Index i = 0; i < 4; ++i) {
    mout << "mean," << i + 1 << ",0," << fmt(mean(i)) << "," << fmt(mean_ref(i)) << "\n";
  }
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      mout << "cov," << i + 1 << "," << j + 1 << "," << fmt(cov(i, j)) << ","
           << fmt(cov_ref(i, j)) << "\n";
    }
  }
  mout.close();
  ctx.write_metadata("fokker_planck.meta.txt");
  return 0;
}

// ---------------------------------------------------------------------------
// advection
// ---------------------------------------------------------------------------

int run_advection(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const Index n = cfg.get_int("n", 33);
  const double half_width = cfg.get_double("half_width", 5.0);
  const Index r = cfg.get_int("r", 6);
  const Index r_f = cfg.get_int("r_f", r);
  IntegratorConfig icfg;
  icfg.oversampling = cfg.get_int("oversampling", 2);
  icfg.dt = cfg.get_double("dt", 2e-3);
  icfg.t_end = cfg.get_double("t_end", 4.0);
  icfg.per_stage_refresh = cfg.get_bool("per_stage_refresh", true);
  icfg.reorthonormalize = cfg.get_bool("reorthonormalize", true);
  icfg.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  if (cfg.get_bool("adaptive", true)) {
    icfg.rhs_adaptivity = {cfg.get_double("eps_l", 1e-5), cfg.get_double("eps_u", 1e-4)};
  }
  const long long probe_every = cfg.get_int("probe_every", 100);
  const bool allow_large = cfg.get_bool("allow_large", false);
  const auto fom_budget = static_cast<std::int64_t>(cfg.get_double("fom_budget", 3e6));
  const std::vector<double> marginal_times = cfg.get_double_list("marginal_times", {icfg.t_end});

  if (n < 5) throw std::invalid_argument("n must be >= 5");
  if (n > 41 && !allow_large) {
    throw std::invalid_argument("n > 41 requires allow_large=true (dense reference cost)");
  }
  const std::int64_t dense_entries = static_cast<std::int64_t>(n) * n * n * n;
  if (dense_entries > fom_budget) {
    throw std::invalid_argument("dense reference of " + std::to_string(dense_entries) +
                                " entries exceeds fom_budget=" + std::to_string(fom_budget));
  }
  if (r < 1 || r_f < 1) throw std::invalid_argument("ranks must be >= 1");
  if (probe_every < 1) throw std::invalid_argument("probe_every must be >= 1");
  if (icfg.t_end < 0.0) throw std::invalid_argument("t_end must be nonnegative");
  icfg.validate();
  ctx.reject_unused_keys();

  std::vector<models::Grid1D> grids;
  for (int i = 0; i < 4; ++i) {
    grids.push_back(models::uniform_grid(-half_width, half_width, n, models::Boundary::Periodic));
  }
  const models::AdvectionModel model(models::default_advection_params(), grids);

  DenseTensor fom = models::advection_initial_condition(grids);
  const TuckerTensor v0 = initial_tucker(fom, std::vector<Index>(4, r));
  DlraState state = make_initial_state(model, v0, std::vector<Index>(4, r_f), icfg);

  const auto total_steps = static_cast<long long>(std::llround(icfg.t_end / icfg.dt));
  std::set<long long> marginal_steps;
  for (double tm : marginal_times) {
    const auto k = static_cast<long long>(std::llround(tm / icfg.dt));
    if (k < 0 || k > total_steps) {
      throw std::invalid_argument("marginal time " + fmt(tm) + " is outside [0, t_end]");
    }
    marginal_steps.insert(k);
  }

  auto write_marginal = [&](long long k) {
    const double t = static_cast<double>(k) * icfg.dt;
    const Eigen::MatrixXd m = models::squared_marginal_34(state.solution, grids);
    char tbuf[32];
    std::snprintf(tbuf, sizeof(tbuf), "%g", t);
    std::ostringstream name;
    name << "marginal_t" << tbuf << ".csv";
    std::ofstream mo = ctx.open_csv(name.str());
    mo << "x3,x4,value\n";
    for (Index a = 0; a < m.rows(); ++a) {
      for (Index b = 0; b < m.cols(); ++b) {
        mo << fmt(grids[2].points(a)) << "," << fmt(grids[3].points(b)) << "," << fmt(m(a, b))
           << "\n";
      }
    }
  };

  std::ofstream out = ctx.open_csv("advection.csv");
  out << time_series_header(4, r) << "\n";
  write_time_series_row(out, 0.0, relative_error(state.solution, fom), state.rhs_multirank,
                        leading_core_values(state.solution), 0);
  if (marginal_steps.count(0)) write_marginal(0);

  std::int64_t cumulative = 0;
  for (long long k = 1; k <= total_steps; ++k) {
    StepStats stats;
    const double t_prev = static_cast<double>(k - 1) * icfg.dt;
    state = step_rk4(state, model, icfg, &stats);
    state.t = static_cast<double>(k) * icfg.dt;
    cumulative += stats.entries_touched;
    fom = fom_rk4(model, std::move(fom), t_prev, icfg.dt, state.t);
    if (k % probe_every == 0 || k == total_steps) {
      write_time_series_row(out, state.t, relative_error(state.solution, fom),
                            stats.rhs_multirank, leading_core_values(state.solution), cumulative);
    }
    if (marginal_steps.count(k)) write_marginal(k);
  }
  out.close();
  ctx.write_metadata("advection.meta.txt");
  return 0;
}

// ---------------------------------------------------------------------------
// fom
// ---------------------------------------------------------------------------

int run_fom(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const std::string which = cfg.get_string("model", "decay");
  const auto budget = static_cast<std::int64_t>(cfg.get_double("budget", 3e6));
  const long long probe_every = cfg.get_int("probe_every", 100);
  if (probe_every < 1) throw std::invalid_argument("probe_every must be >= 1");

  std::unique_ptr<TdeModel> model;
  DenseTensor v0;
  double dt = 0.0;
  double t_end = 0.0;

  if (which == "decay") {
    const Index d = cfg.get_int("d", 3);
    const Index n = cfg.get_int("n", 17);
    const double half_width = cfg.get_double("half_width", 5.0);
    dt = cfg.get_double("dt", 0.05);
    t_end = cfg.get_double("t_end", 1.0);
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    std::vector<Index> shape(static_cast<size_t>(d), n);
    std::int64_t total = 1;
    for (Index e : shape) total *= e;
    if (total > budget) {
      throw std::invalid_argument("dense field of " + std::to_string(total) +
                                  " entries exceeds budget=" + std::to_string(budget));
    }
    model = std::make_unique<models::DecayModel>(shape);
    // Separable Gaussian bump as a smooth deterministic initial field.
    const models::Grid1D g =
        models::uniform_grid(-half_width, half_width, n, models::Boundary::Dirichlet);
    v0 = DenseTensor(shape);
    std::vector<Index> idx(static_cast<size_t>(d), 0);
    for (Index flat = 0; flat < v0.size(); ++flat) {
      double s = 0.0;
      for (Index m = 0; m < d; ++m) s += g.points(idx[static_cast<size_t>(m)]) *
                                          g.points(idx[static_cast<size_t>(m)]);
      v0[flat] = std::exp(-s);
      for (Index m = d; m-- > 0;) {
        if (++idx[static_cast<size_t>(m)] < n) break;
        idx[static_cast<size_t>(m)] = 0;
      }
    }
  } else if (which == "fokker-planck") {
    const Index n = cfg.get_int("n", 31);
    const double half_width = cfg.get_double("half_width", 6.0);
    dt = cfg.get_double("dt", 2e-3);
    t_end = cfg.get_double("t_end", 8.0);
    const std::int64_t total = static_cast<std::int64_t>(n) * n * n * n;
    if (total > budget) {
      throw std::invalid_argument("dense field of " + std::to_string(total) +
                                  " entries exceeds budget=" + std::to_string(budget));
    }
    const models::FokkerPlanckParams params = models::default_fokker_planck_params();
    std::vector<models::Grid1D> grids;
    for (int i = 0; i < 4; ++i) {
      grids.push_back(
          models::uniform_grid(-half_width, half_width, n, models::Boundary::Dirichlet));
    }
    v0 = models::gaussian_density(grids, params.mean0, params.cov0);
    models::FokkerPlanckParams owned = params;
    model = std::make_unique<models::FokkerPlanckModel>(std::move(owned), grids);
  } else if (which == "advection") {
    const Index n = cfg.get_int("n", 33);
    const double half_width = cfg.get_double("half_width", 5.0);
    dt = cfg.get_double("dt", 2e-3);
    t_end = cfg.get_double("t_end", 4.0);
    const std::int64_t total = static_cast<std::int64_t>(n) * n * n * n;
    if (total > budget) {
      throw std::invalid_argument("dense field of " + std::to_string(total) +
                                  " entries exceeds budget=" + std::to_string(budget));
    }
    std::vector<models::Grid1D> grids;
    for (int i = 0; i < 4; ++i) {
      grids.push_back(
          models::uniform_grid(-half_width, half_width, n, models::Boundary::Periodic));
    }
    v0 = models::advection_initial_condition(grids);
    model = std::make_unique<models::AdvectionModel>(models::default_advection_params(), grids);
  } else {
    throw std::invalid_argument("model must be decay, fokker-planck, or advection, got: " +
                                which);
  }
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (t_end < 0.0) throw std::invalid_argument("t_end must be nonnegative");
  ctx.reject_unused_keys();

  std::ofstream summary = ctx.open_csv("fom_summary.csv");
  summary << "t,frobenius_norm\n";
  std::ofstream traj(ctx.out_dir / "fom_trajectory.bin", std::ios::binary);
  if (!traj) throw std::runtime_error("cannot write fom_trajectory.bin");

  const auto total_steps = static_cast<long long>(std::llround(t_end / dt));
  std::int64_t snapshot_count = 0;
  const std::int64_t d64 = v0.order();
  traj.write(reinterpret_cast<const char*>(&d64), sizeof(d64));
  for (Index e : v0.shape()) {
    const std::int64_t e64 = e;
    traj.write(reinterpret_cast<const char*>(&e64), sizeof(e64));
  }
  const auto count_pos = traj.tellp();
  traj.write(reinterpret_cast<const char*>(&snapshot_count), sizeof(snapshot_count));

  auto snapshot = [&](double t, const DenseTensor& v) {
    summary << fmt(t) << "," << fmt(frobenius_norm(v)) << "\n";
    traj.write(reinterpret_cast<const char*>(&t), sizeof(t));
    traj.write(reinterpret_cast<const char*>(v.data()),
               static_cast<std::streamsize>(v.size() * static_cast<Index>(sizeof(double))));
    ++snapshot_count;
  };

  snapshot(0.0, v0);
  long long step_index = 0;
  const DenseTensor final_state =
      fom_rk4(*model, std::move(v0), 0.0, dt, t_end, [&](double t, const DenseTensor& v) {
        ++step_index;
        if (step_index % probe_every == 0 || step_index == total_steps) snapshot(t, v);
      });
  (void)final_state;
  traj.seekp(count_pos);
  traj.write(reinterpret_cast<const char*>(&snapshot_count), sizeof(snapshot_count));
  traj.close();
  summary.close();
  ctx.write_metadata("fom.meta.txt");
  return 0;
}

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_path, "key = value configuration file");
  sub->add_option("--out-dir", opts.out_dir, "output directory (created if missing)");
  sub->add_option("--seed", opts.seed, "random seed (overrides the config file)")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
  sub->add_option("--override", opts.overrides, "key=value overrides, highest precedence");
}

RunContext make_context(const CommonOptions& opts) {
  RunContext ctx;
  if (!opts.config_path.empty()) ctx.cfg.load_file(opts.config_path);
  for (const auto& kv : opts.overrides) ctx.cfg.apply_override(kv);
  if (opts.seed_given) ctx.cfg.set("seed", std::to_string(opts.seed));
  ctx.out_dir = opts.out_dir;
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) throw std::invalid_argument("cannot create output directory: " + ctx.out_dir.string());
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross Tucker approximation and dynamical low-rank benchmark driver"};
  app.require_subcommand(1);

  CommonOptions opts;
  CLI::App* cc = app.add_subcommand("cross-compare",
                                    "rank sweep of cross methods on analytic targets");
  CLI::App* fp = app.add_subcommand("fokker-planck", "4-D drift-diffusion low-rank run");
  CLI::App* adv = app.add_subcommand("advection", "4-D transport low-rank run vs dense reference");
  CLI::App* fom = app.add_subcommand("fom", "dense full-order reference trajectory");
  for (CLI::App* sub : {cc, fp, adv, fom}) add_common(sub, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunContext ctx = make_context(opts);
    if (cc->parsed()) return run_cross_compare(ctx);
    if (fp->parsed()) return run_fokker_planck(ctx);
    if (adv->parsed()) return run_advection(ctx);
    return run_fom(ctx);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateBasisError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const IllConditionedIntersectionError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const SingularCoreError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateDensityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
