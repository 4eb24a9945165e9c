#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tuckercross/cross.hpp"
#include "tuckercross/dense_tensor.hpp"
#include "tuckercross/fiber_oracle.hpp"
#include "tuckercross/tucker_tensor.hpp"

namespace tuckercross {

/// Tensor differential equation dV/dt = F(t, V).  A model exposes the
/// right-hand side two ways: as a fiber oracle around a low-rank solution
/// (never densifying), and densely for full-order references and tests.
class TdeModel {
 public:
  virtual ~TdeModel() = default;
  virtual std::vector<Index> shape() const = 0;
  virtual std::unique_ptr<FiberOracle> make_oracle(double t, const TuckerTensor& v) const = 0;
  virtual DenseTensor dense_rhs(double t, const DenseTensor& v) const = 0;
};

struct DlraState {
  double t = 0.0;
  TuckerTensor solution;                     // {S, U^(1..d)}, factors orthonormal
  std::vector<Eigen::MatrixXd> rhs_guides;   // warm-start guides, r'_F columns per mode
  std::vector<Index> rhs_multirank;          // current r_F
};

struct IntegratorConfig {
  double dt = 0.0;
  double t_end = 0.0;
  std::optional<std::pair<double, double>> rhs_adaptivity;  // (eps_l, eps_u)
  Index oversampling = 2;          // r'_F = r_F + oversampling
  bool reorthonormalize = true;    // thin-QR factors after each step, absorb R into the core
  bool per_stage_refresh = true;   // warm-start each RK4 stage from the latest fibers
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Projected core velocity: the right-hand side's core multiplied along each
/// mode by the small Gram matrix U^(i)T U_F^(i).
DenseTensor core_rhs(const DlraState& state, const TuckerTensor& rhs);

/// Projected factor velocity for one mode; lies in the orthogonal complement
/// of the current factor's column space (U^(i)T Udot^(i) = 0).  Throws
/// SingularCoreError when the unfolded core is numerically rank-deficient.
Eigen::MatrixXd factor_rhs(const DlraState& state, const TuckerTensor& rhs, Index mode);

struct DlraDerivative {
  DenseTensor core_dot;
  std::vector<Eigen::MatrixXd> factor_dots;
};

/// Same projections evaluated against a densely held right-hand side; the
/// validation reference for core_rhs/factor_rhs.
DlraDerivative dlra_reference_rhs(const DlraState& state, const DenseTensor& f);

struct StepStats {
  std::vector<Index> rhs_multirank;  // after any adaptation in the step
  SingularSpectrum rhs_spectrum;     // spectrum of the final stage's rhs core
  std::int64_t entries_touched = 0;  // oracle entries computed across the 4 stages
};

/// One classical RK4 step of the coupled core/factor system, with a fresh
/// cross approximation of F built at every stage.  Rank adaptation (when
/// configured) happens once, after the final stage.
DlraState step_rk4(const DlraState& state, const TdeModel& model, const IntegratorConfig& cfg,
                   StepStats* stats = nullptr);

/// HOSVD truncation of a densely evaluated initial condition.
TuckerTensor initial_tucker(const DenseTensor& v0, const std::vector<Index>& multirank);

/// Seeds the warm-start guides by running the black-box cross approximation
/// on F(t0, v0) once.
DlraState make_initial_state(const TdeModel& model, TuckerTensor v0,
                             std::vector<Index> rhs_multirank, const IntegratorConfig& cfg,
                             double t0 = 0.0);

using ProbeFn = std::function<void(const DlraState&, const StepStats&)>;

/// Advances from state.t to cfg.t_end in steps of cfg.dt, invoking the probe
/// after every step.  The number of steps is round((t_end - t0)/dt).
void integrate(DlraState& state, const TdeModel& model, const IntegratorConfig& cfg,
               const ProbeFn& probe = {});

using SnapshotFn = std::function<void(double, const DenseTensor&)>;

/// Dense full-order RK4 reference on the same model.
DenseTensor fom_rk4(const TdeModel& model, DenseTensor v0, double t0, double dt, double t_end,
                    const SnapshotFn& probe = {});

}  // namespace tuckercross
