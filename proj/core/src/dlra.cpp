#include "tuckercross/dlra.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tuckercross/errors.hpp"
#include "tuckercross/svd.hpp"
#include "tuckercross/tensor_ops.hpp"

namespace tuckercross {

namespace {

void check_compatible(const TuckerTensor& solution, const TuckerTensor& rhs) {
  if (rhs.order() != solution.order()) {
    throw std::invalid_argument("solution and right-hand side orders differ");
  }
  for (Index i = 0; i < solution.order(); ++i) {
    if (rhs.factors[static_cast<size_t>(i)].rows() !=
        solution.factors[static_cast<size_t>(i)].rows()) {
      throw std::invalid_argument("factor row counts differ at mode " + std::to_string(i));
    }
  }
}

// S_(i)^+ = S_(i)^T (S_(i) S_(i)^T)^{-1}; guards the inverse with a singular
// value check on the unfolded core.
Eigen::MatrixXd core_unfolding_pinv(const DenseTensor& core, Index mode) {
  const Eigen::MatrixXd s = unfold(core, mode);
  const Eigen::VectorXd sv = singular_values(s);
  if (sv(sv.size() - 1) < 1e-12 * sv(0)) {
    throw SingularCoreError("core unfolding at mode " + std::to_string(mode) +
                            " is numerically singular; reduce the solution rank");
  }
  const Eigen::MatrixXd gram = s * s.transpose();
  return s.transpose() * gram.ldlt().solve(Eigen::MatrixXd::Identity(s.rows(), s.rows()));
}

Eigen::MatrixXd factor_rhs_impl(const TuckerTensor& solution, const TuckerTensor& rhs,
                                Index mode) {
  const Index d = solution.order();
  if (mode < 0 || mode >= d) throw std::invalid_argument("mode out of range");
  // Project the rhs core onto the solution factors on every mode but `mode`.
  DenseTensor t = rhs.core;
  for (Index k = 0; k < d; ++k) {
    if (k == mode) continue;
    t = mode_product(t,
                     solution.factors[static_cast<size_t>(k)].transpose() *
                         rhs.factors[static_cast<size_t>(k)],
                     k);
  }
  const Eigen::MatrixXd m = unfold(t, mode);
  const Eigen::MatrixXd s_pinv = core_unfolding_pinv(solution.core, mode);
  const auto& u = solution.factors[static_cast<size_t>(mode)];
  const Eigen::MatrixXd b = rhs.factors[static_cast<size_t>(mode)] * (m * s_pinv);
  return b - u * (u.transpose() * b);
}

DlraDerivative derivative(const TuckerTensor& solution, const TuckerTensor& rhs) {
  check_compatible(solution, rhs);
  DlraDerivative out;
  DenseTensor core_dot = rhs.core;
  for (Index i = 0; i < solution.order(); ++i) {
    core_dot = mode_product(core_dot,
                            solution.factors[static_cast<size_t>(i)].transpose() *
                                rhs.factors[static_cast<size_t>(i)],
                            i);
  }
  out.core_dot = std::move(core_dot);
  out.factor_dots.resize(static_cast<size_t>(solution.order()));
  for (Index i = 0; i < solution.order(); ++i) {
    out.factor_dots[static_cast<size_t>(i)] = factor_rhs_impl(solution, rhs, i);
  }
  return out;
}

TuckerTensor advanced(const TuckerTensor& base, const DlraDerivative& k, double scale) {
  TuckerTensor out = base;
  out.core.as_vector() += scale * k.core_dot.as_vector();
  for (size_t i = 0; i < out.factors.size(); ++i) out.factors[i] += scale * k.factor_dots[i];
  return out;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (oversampling < 0) throw std::invalid_argument("oversampling must be nonnegative");
  if (rhs_adaptivity && !(rhs_adaptivity->first < rhs_adaptivity->second)) {
    throw std::invalid_argument("adaptivity requires eps_l < eps_u");
  }
}

DenseTensor core_rhs(const DlraState& state, const TuckerTensor& rhs) {
  check_compatible(state.solution, rhs);
  DenseTensor out = rhs.core;
  for (Index i = 0; i < state.solution.order(); ++i) {
    out = mode_product(out,
                       state.solution.factors[static_cast<size_t>(i)].transpose() *
                           rhs.factors[static_cast<size_t>(i)],
                       i);
  }
  return out;
}

Eigen::MatrixXd factor_rhs(const DlraState& state, const TuckerTensor& rhs, Index mode) {
  check_compatible(state.solution, rhs);
  return factor_rhs_impl(state.solution, rhs, mode);
}

DlraDerivative dlra_reference_rhs(const DlraState& state, const DenseTensor& f) {
  const TuckerTensor& sol = state.solution;
  if (f.shape() != sol.shape()) {
    throw std::invalid_argument("dense right-hand side shape does not match the solution");
  }
  const Index d = sol.order();
  DlraDerivative out;
  DenseTensor core_dot = f;
  for (Index i = 0; i < d; ++i) {
    core_dot = mode_product(core_dot, sol.factors[static_cast<size_t>(i)].transpose(), i);
  }
  out.core_dot = std::move(core_dot);
  out.factor_dots.resize(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    DenseTensor t = f;
    for (Index k = 0; k < d; ++k) {
      if (k != i) t = mode_product(t, sol.factors[static_cast<size_t>(k)].transpose(), k);
    }
    const Eigen::MatrixXd m = unfold(t, i);
    const Eigen::MatrixXd s_pinv = core_unfolding_pinv(sol.core, i);
    const auto& u = sol.factors[static_cast<size_t>(i)];
    const Eigen::MatrixXd b = m * s_pinv;
    out.factor_dots[static_cast<size_t>(i)] = b - u * (u.transpose() * b);
  }
  return out;
}

DlraState step_rk4(const DlraState& state, const TdeModel& model, const IntegratorConfig& cfg,
                   StepStats* stats) {
  cfg.validate();
  const Index d = state.solution.order();
  CrossConfig ccfg;
  ccfg.multirank = state.rhs_multirank;
  ccfg.oversampling = cfg.oversampling;
  ccfg.seed = cfg.seed;

  std::int64_t entries = 0;
  auto stage = [&](double ts, const TuckerTensor& vs,
                   const std::vector<Eigen::MatrixXd>& guides) {
    const auto oracle = model.make_oracle(ts, vs);
    CrossResult res = deim_fs(*oracle, guides, ccfg);
    entries += oracle->entries_touched();
    return std::pair<DlraDerivative, CrossResult>(derivative(vs, res.approx), std::move(res));
  };

  const double h = cfg.dt;
  auto [k1, res1] = stage(state.t, state.solution, state.rhs_guides);
  const auto& g2 = cfg.per_stage_refresh ? res1.guides : state.rhs_guides;
  auto [k2, res2] = stage(state.t + h / 2, advanced(state.solution, k1, h / 2), g2);
  const auto& g3 = cfg.per_stage_refresh ? res2.guides : state.rhs_guides;
  auto [k3, res3] = stage(state.t + h / 2, advanced(state.solution, k2, h / 2), g3);
  const auto& g4 = cfg.per_stage_refresh ? res3.guides : state.rhs_guides;
  auto [k4, res4] = stage(state.t + h, advanced(state.solution, k3, h), g4);

  DlraState next;
  next.t = state.t + h;
  next.solution = state.solution;
  next.solution.core.as_vector() +=
      (h / 6) * (k1.core_dot.as_vector() + 2 * k2.core_dot.as_vector() +
                 2 * k3.core_dot.as_vector() + k4.core_dot.as_vector());
  for (size_t i = 0; i < next.solution.factors.size(); ++i) {
    next.solution.factors[i] += (h / 6) * (k1.factor_dots[i] + 2 * k2.factor_dots[i] +
                                           2 * k3.factor_dots[i] + k4.factor_dots[i]);
  }

  if (cfg.reorthonormalize) {
    for (Index i = 0; i < d; ++i) {
      auto& u = next.solution.factors[static_cast<size_t>(i)];
      const Index r = u.cols();
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(u.rows(), r);
      Eigen::MatrixXd rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
      for (Index j = 0; j < r; ++j) {
        if (rr(j, j) < 0) {
          q.col(j) = -q.col(j);
          rr.row(j) = -rr.row(j);
        }
      }
      u = std::move(q);
      next.solution.core = mode_product(next.solution.core, rr, i);
    }
  }

  next.rhs_multirank = state.rhs_multirank;
  next.rhs_guides = res4.guides;
  if (cfg.rhs_adaptivity) {
    for (Index i = 0; i < d; ++i) {
      const double proxy = error_proxy(res4.spectrum, i);
      Index r = adapt_rank(next.rhs_multirank[static_cast<size_t>(i)], proxy, *cfg.rhs_adaptivity);
      const auto& ci = res4.samples.fiber_matrices[static_cast<size_t>(i)];
      const Index max_prime = std::min(ci.rows(), ci.cols());
      r = std::max<Index>(std::min(r, max_prime - cfg.oversampling), 1);
      if (r != next.rhs_multirank[static_cast<size_t>(i)]) {
        next.rhs_multirank[static_cast<size_t>(i)] = r;
        // Re-derive the guide at the new width from the latest fibers.
        next.rhs_guides[static_cast<size_t>(i)] =
            truncated_left_svd(ci, r + cfg.oversampling, /*gram_for_wide=*/true).u;
      }
    }
  }

  if (stats) {
    stats->rhs_multirank = next.rhs_multirank;
    stats->rhs_spectrum = res4.spectrum;
    stats->entries_touched = entries;
  }
  return next;
}

TuckerTensor initial_tucker(const DenseTensor& v0, const std::vector<Index>& multirank) {
  return hosvd(v0, multirank);
}

DlraState make_initial_state(const TdeModel& model, TuckerTensor v0,
                             std::vector<Index> rhs_multirank, const IntegratorConfig& cfg,
                             double t0) {
  cfg.validate();
  const auto oracle = model.make_oracle(t0, v0);
  CrossConfig ccfg;
  ccfg.multirank = rhs_multirank;
  ccfg.oversampling = cfg.oversampling;
  ccfg.seed = cfg.seed;
  IterativeResult warm = deim_fs_iterative(*oracle, ccfg);
  DlraState state;
  state.t = t0;
  state.solution = std::move(v0);
  state.rhs_guides = std::move(warm.result.guides);
  state.rhs_multirank = std::move(rhs_multirank);
  return state;
}

void integrate(DlraState& state, const TdeModel& model, const IntegratorConfig& cfg,
               const ProbeFn& probe) {
  cfg.validate();
  if (cfg.t_end < state.t - 1e-12) throw std::invalid_argument("t_end precedes the current time");
  const double t0 = state.t;
  const auto steps = static_cast<long long>(std::llround((cfg.t_end - t0) / cfg.dt));
  for (long long n = 1; n <= steps; ++n) {
    StepStats stats;
    state = step_rk4(state, model, cfg, &stats);
    state.t = t0 + static_cast<double>(n) * cfg.dt;
    if (probe) probe(state, stats);
  }
}

DenseTensor fom_rk4(const TdeModel& model, DenseTensor v0, double t0, double dt, double t_end,
                    const SnapshotFn& probe) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (t_end < t0 - 1e-12) throw std::invalid_argument("t_end precedes the start time");
  DenseTensor v = std::move(v0);
  const auto steps = static_cast<long long>(std::llround((t_end - t0) / dt));
  for (long long n = 1; n <= steps; ++n) {
    const double t = t0 + static_cast<double>(n - 1) * dt;
    DenseTensor k1 = model.dense_rhs(t, v);
    DenseTensor u(v.shape());
    u.as_vector() = v.as_vector() + (dt / 2) * k1.as_vector();
    DenseTensor k2 = model.dense_rhs(t + dt / 2, u);
    u.as_vector() = v.as_vector() + (dt / 2) * k2.as_vector();
    DenseTensor k3 = model.dense_rhs(t + dt / 2, u);
    u.as_vector() = v.as_vector() + dt * k3.as_vector();
    DenseTensor k4 = model.dense_rhs(t + dt, u);
    v.as_vector() += (dt / 6) * (k1.as_vector() + 2 * k2.as_vector() + 2 * k3.as_vector() +
                                 k4.as_vector());
    if (probe) probe(t0 + static_cast<double>(n) * dt, v);
  }
  return v;
}

}  // namespace tuckercross
