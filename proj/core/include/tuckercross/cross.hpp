#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tuckercross/dense_tensor.hpp"
#include "tuckercross/fiber_oracle.hpp"
#include "tuckercross/tucker_tensor.hpp"

namespace tuckercross {

/// Per-mode fiber indices p_i, the gathered fiber matrices C_i, and the
/// intersection tensor W at the Cartesian product of the indices.
struct FiberSampleSet {
  std::vector<std::vector<Index>> index_vectors;  // d lists, distinct entries
  std::vector<Eigen::MatrixXd> fiber_matrices;    // C_i: N_i x prod_{k!=i} r'_k
  DenseTensor intersection;                       // W: (r'_1..r'_d)
};

struct CrossConfig {
  std::vector<Index> multirank;             // target Tucker multirank r
  Index oversampling = 2;                   // r' = r + oversampling per mode
  std::optional<std::pair<double, double>> adaptivity;  // (eps_l, eps_u)
  int max_iterations = 50;                  // iterative variant
  double convergence_tol = 1e-8;            // iterative variant
  std::uint64_t seed = 0;                   // iterative/baseline initialization

  std::vector<Index> fiber_counts() const;  // r'_i per mode
  void validate(Index order) const;         // throws std::invalid_argument
};

/// Per-mode singular values of the unfolded core.
struct SingularSpectrum {
  std::vector<Eigen::VectorXd> values;
};

/// DEIM-selects fiber indices from the guide bases and gathers the fiber
/// matrices and intersection tensor from the oracle.  Guide i must have N_i
/// rows; its column count sets r'_i.  The intersection is extracted from the
/// already-gathered fibers, so the oracle is consulted only for the C_i.
FiberSampleSet sample_fibers(const FiberOracle& oracle,
                             const std::vector<Eigen::MatrixXd>& guides);

/// Leading left singular vectors of each fiber matrix, truncated at the
/// target multirank.
std::vector<Eigen::MatrixXd> factors_from_fibers(const FiberSampleSet& samples,
                                                 const std::vector<Index>& multirank);

/// Least-squares core: W multiplied along each mode by the pseudo-inverse of
/// the factor restricted to the selected rows.  Throws
/// IllConditionedIntersectionError when a restricted factor is numerically
/// rank-deficient.
DenseTensor core_from_intersection(const DenseTensor& intersection,
                                   const std::vector<Eigen::MatrixXd>& factors,
                                   const std::vector<std::vector<Index>>& index_vectors);

struct CrossResult {
  TuckerTensor approx;
  FiberSampleSet samples;
  SingularSpectrum spectrum;
  /// First r'_i left singular vectors of each C_i; the natural guides for a
  /// warm-started re-run.
  std::vector<Eigen::MatrixXd> guides;
};

/// Fiber-sampling cross Tucker approximation guided by (approximate) left
/// singular vectors of the target's unfoldings.
CrossResult deim_fs(const FiberOracle& oracle, const std::vector<Eigen::MatrixXd>& guides,
                    const CrossConfig& cfg);

/// Variant with explicitly given fiber indices (no DEIM step); shared by the
/// first pass of the iterative algorithm.
CrossResult cross_from_indices(const FiberOracle& oracle,
                               std::vector<std::vector<Index>> index_vectors,
                               const CrossConfig& cfg);

/// Smallest singular value of the mode-unfolded core relative to the
/// Frobenius norm of all its singular values.
double error_proxy(const SingularSpectrum& spectrum, Index mode);

/// One-step rank update: above the upper threshold the rank grows by one,
/// below the lower threshold it shrinks by one (floored at 1).
Index adapt_rank(Index current_rank, double proxy, std::pair<double, double> thresholds);

struct IterativeResult {
  CrossResult result;
  int iterations = 0;
  bool converged = false;
};

/// Black-box variant: the first pass samples random distinct fiber indices,
/// later passes reuse the previous pass's fiber-matrix singular vectors as
/// guides, until the core's singular-value norms stabilize per mode.
IterativeResult deim_fs_iterative(const FiberOracle& oracle, const CrossConfig& cfg);

/// Reference higher-order SVD of a densely held tensor.
TuckerTensor hosvd(const DenseTensor& t, const std::vector<Index>& multirank);

/// Fiber-sampling skeleton baseline: the intersection tensor is the core and
/// C_i * pinv(W_(i)) are the (non-orthonormal) factors.  Fibers grow from one
/// random multi-index by a greedy residual sweep.
TuckerTensor fstd(const FiberOracle& oracle, const std::vector<Index>& fiber_counts,
                  std::uint64_t seed);

/// ||reconstruct(approx) - truth||_F, streamed slice by slice so no second
/// dense copy is formed.
double absolute_error(const TuckerTensor& approx, const DenseTensor& truth);

/// absolute_error divided by ||truth||_F; throws std::invalid_argument when
/// the truth has zero norm.
double relative_error(const TuckerTensor& approx, const DenseTensor& truth);

}  // namespace tuckercross
