#include "tuckercross/cross.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "tuckercross/deim.hpp"
#include "tuckercross/errors.hpp"
#include "tuckercross/svd.hpp"
#include "tuckercross/tensor_ops.hpp"

namespace tuckercross {

namespace {

FiberSampleSet gather_samples(const FiberOracle& oracle,
                              std::vector<std::vector<Index>> index_vectors) {
  const Index d = oracle.order();
  FiberSampleSet out;
  out.fiber_matrices.resize(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    out.fiber_matrices[static_cast<size_t>(i)] = oracle.fiber_block(i, index_vectors);
  }
  // The intersection is a row subset of the first fiber matrix; no extra
  // oracle entries are needed.
  std::vector<Index> w_shape(static_cast<size_t>(d));
  for (Index k = 0; k < d; ++k) {
    w_shape[static_cast<size_t>(k)] = static_cast<Index>(index_vectors[static_cast<size_t>(k)].size());
  }
  const auto& p0 = index_vectors[0];
  Eigen::MatrixXd w_rows(static_cast<Index>(p0.size()), out.fiber_matrices[0].cols());
  for (size_t r = 0; r < p0.size(); ++r) w_rows.row(static_cast<Index>(r)) = out.fiber_matrices[0].row(p0[r]);
  out.intersection = fold(w_rows, 0, w_shape);
  out.index_vectors = std::move(index_vectors);
  return out;
}

SingularSpectrum core_spectrum(const DenseTensor& core) {
  SingularSpectrum spec;
  spec.values.resize(static_cast<size_t>(core.order()));
  for (Index i = 0; i < core.order(); ++i) {
    spec.values[static_cast<size_t>(i)] = singular_values(unfold(core, i));
  }
  return spec;
}

double spectrum_norm(const SingularSpectrum& spec, Index mode) {
  return spec.values[static_cast<size_t>(mode)].norm();
}

CrossResult assemble(const FiberOracle& oracle, FiberSampleSet samples, const CrossConfig& cfg) {
  const Index d = oracle.order();
  const auto counts = cfg.fiber_counts();
  CrossResult res;
  res.guides.resize(static_cast<size_t>(d));
  std::vector<Eigen::MatrixXd> factors(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const auto& ci = samples.fiber_matrices[static_cast<size_t>(i)];
    const Index ri = cfg.multirank[static_cast<size_t>(i)];
    const Index rpi = std::min(counts[static_cast<size_t>(i)], std::min(ci.rows(), ci.cols()));
    if (ri > std::min(ci.rows(), ci.cols())) {
      throw std::invalid_argument("target rank exceeds the fiber matrix dimensions at mode " +
                                  std::to_string(i));
    }
    TruncatedSvd svd = truncated_left_svd(ci, rpi, /*gram_for_wide=*/true);
    if (svd.values(ri - 1) < 1e-12 * svd.values(0)) {
      std::cerr << "tuckercross: fiber matrix at mode " << i
                << " is numerically rank-deficient below the target rank\n";
    }
    factors[static_cast<size_t>(i)] = svd.u.leftCols(ri);
    res.guides[static_cast<size_t>(i)] = svd.u;
  }
  DenseTensor core = core_from_intersection(samples.intersection, factors, samples.index_vectors);
  res.spectrum = core_spectrum(core);
  res.approx = TuckerTensor{std::move(core), std::move(factors)};
  res.samples = std::move(samples);
  return res;
}

std::vector<Index> random_distinct_indices(Index n, Index count, std::mt19937_64& rng) {
  std::vector<Index> all(static_cast<size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  // Partial Fisher-Yates; explicit so the draw depends only on the seed.
  for (Index i = 0; i < count; ++i) {
    const Index j = i + static_cast<Index>(rng() % static_cast<std::uint64_t>(n - i));
    std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
  }
  std::vector<Index> picked(all.begin(), all.begin() + count);
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

std::vector<Index> CrossConfig::fiber_counts() const {
  std::vector<Index> counts(multirank.size());
  for (size_t i = 0; i < multirank.size(); ++i) counts[i] = multirank[i] + oversampling;
  return counts;
}

void CrossConfig::validate(Index order) const {
  if (static_cast<Index>(multirank.size()) != order) {
    throw std::invalid_argument("multirank must have one entry per mode");
  }
  for (Index r : multirank) {
    if (r < 1) throw std::invalid_argument("target ranks must be positive");
  }
  if (oversampling < 0) throw std::invalid_argument("oversampling must be nonnegative");
  if (adaptivity && !(adaptivity->first < adaptivity->second)) {
    throw std::invalid_argument("adaptivity requires eps_l < eps_u");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (convergence_tol <= 0.0) throw std::invalid_argument("convergence tolerance must be positive");
}

FiberSampleSet sample_fibers(const FiberOracle& oracle,
                             const std::vector<Eigen::MatrixXd>& guides) {
  const Index d = oracle.order();
  if (static_cast<Index>(guides.size()) != d) {
    throw std::invalid_argument("one guide matrix per mode is required");
  }
  std::vector<std::vector<Index>> index_vectors(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const auto& g = guides[static_cast<size_t>(i)];
    if (g.rows() != oracle.shape()[static_cast<size_t>(i)]) {
      throw std::invalid_argument("guide " + std::to_string(i) +
                                  " row count does not match the tensor extent");
    }
    index_vectors[static_cast<size_t>(i)] = deim_indices(g);
  }
  return gather_samples(oracle, std::move(index_vectors));
}

std::vector<Eigen::MatrixXd> factors_from_fibers(const FiberSampleSet& samples,
                                                 const std::vector<Index>& multirank) {
  std::vector<Eigen::MatrixXd> factors(samples.fiber_matrices.size());
  for (size_t i = 0; i < samples.fiber_matrices.size(); ++i) {
    const auto& ci = samples.fiber_matrices[i];
    const Index ri = multirank.at(i);
    if (ri > std::min(ci.rows(), ci.cols())) {
      throw std::invalid_argument("target rank exceeds the fiber matrix dimensions at mode " +
                                  std::to_string(i));
    }
    TruncatedSvd svd = truncated_left_svd(ci, ri, /*gram_for_wide=*/true);
    if (svd.values(ri - 1) < 1e-12 * svd.values(0)) {
      std::cerr << "tuckercross: fiber matrix at mode " << i
                << " is numerically rank-deficient below the target rank\n";
    }
    factors[i] = std::move(svd.u);
  }
  return factors;
}

DenseTensor core_from_intersection(const DenseTensor& intersection,
                                   const std::vector<Eigen::MatrixXd>& factors,
                                   const std::vector<std::vector<Index>>& index_vectors) {
  if (factors.size() != index_vectors.size() ||
      static_cast<Index>(factors.size()) != intersection.order()) {
    throw std::invalid_argument("factor/index counts do not match the intersection order");
  }
  DenseTensor core = intersection;
  for (Index i = 0; i < intersection.order(); ++i) {
    const auto& u = factors[static_cast<size_t>(i)];
    const auto& pi = index_vectors[static_cast<size_t>(i)];
    Eigen::MatrixXd restricted(static_cast<Index>(pi.size()), u.cols());
    for (size_t r = 0; r < pi.size(); ++r) restricted.row(static_cast<Index>(r)) = u.row(pi[r]);
    const Eigen::VectorXd sv = singular_values(restricted);
    if (sv(0) <= 0.0) {
      throw IllConditionedIntersectionError(
          "factor restricted to the selected rows vanishes at mode " + std::to_string(i));
    }
    if (sv(sv.size() - 1) < 1e-12 * sv(0)) {
      // Recoverable: the pseudo-inverse regularizes the deficient directions,
      // and iterative re-selection replaces the offending rows next pass.
      std::cerr << "tuckercross: restricted factor is numerically rank-deficient at mode " << i
                << "\n";
    }
    core = mode_product(core, pseudo_inverse(restricted), i);
  }
  return core;
}

CrossResult deim_fs(const FiberOracle& oracle, const std::vector<Eigen::MatrixXd>& guides,
                    const CrossConfig& cfg) {
  cfg.validate(oracle.order());
  const auto counts = cfg.fiber_counts();
  for (Index i = 0; i < oracle.order(); ++i) {
    if (guides[static_cast<size_t>(i)].cols() != counts[static_cast<size_t>(i)]) {
      throw std::invalid_argument("guide " + std::to_string(i) + " must have r + oversampling columns");
    }
  }
  return assemble(oracle, sample_fibers(oracle, guides), cfg);
}

CrossResult cross_from_indices(const FiberOracle& oracle,
                               std::vector<std::vector<Index>> index_vectors, const CrossConfig& cfg) {
  cfg.validate(oracle.order());
  const auto counts = cfg.fiber_counts();
  for (Index i = 0; i < oracle.order(); ++i) {
    if (static_cast<Index>(index_vectors[static_cast<size_t>(i)].size()) != counts[static_cast<size_t>(i)]) {
      throw std::invalid_argument("index vector " + std::to_string(i) +
                                  " must have r + oversampling entries");
    }
  }
  return assemble(oracle, gather_samples(oracle, std::move(index_vectors)), cfg);
}

double error_proxy(const SingularSpectrum& spectrum, Index mode) {
  if (mode < 0 || mode >= static_cast<Index>(spectrum.values.size())) {
    throw std::invalid_argument("spectrum mode out of range");
  }
  const auto& sv = spectrum.values[static_cast<size_t>(mode)];
  if (sv.size() == 0) throw std::invalid_argument("empty spectrum");
  const double norm = sv.norm();
  return norm > 0.0 ? sv.minCoeff() / norm : 0.0;
}

Index adapt_rank(Index current_rank, double proxy, std::pair<double, double> thresholds) {
  const auto [eps_l, eps_u] = thresholds;
  if (!(eps_l < eps_u)) throw std::invalid_argument("rank adaptation requires eps_l < eps_u");
  if (proxy > eps_u) return current_rank + 1;
  if (proxy < eps_l) return std::max<Index>(current_rank - 1, 1);
  return current_rank;
}

IterativeResult deim_fs_iterative(const FiberOracle& oracle, const CrossConfig& cfg) {
  cfg.validate(oracle.order());
  const Index d = oracle.order();
  const auto counts = cfg.fiber_counts();
  std::mt19937_64 rng(cfg.seed);

  std::vector<std::vector<Index>> initial(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const Index n = oracle.shape()[static_cast<size_t>(i)];
    if (counts[static_cast<size_t>(i)] > n) {
      throw std::invalid_argument("fiber count exceeds the extent at mode " + std::to_string(i));
    }
    initial[static_cast<size_t>(i)] = random_distinct_indices(n, counts[static_cast<size_t>(i)], rng);
  }

  IterativeResult out;
  out.result = cross_from_indices(oracle, std::move(initial), cfg);
  out.iterations = 1;
  std::vector<double> prev_norms(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) prev_norms[static_cast<size_t>(i)] = spectrum_norm(out.result.spectrum, i);

  while (out.iterations < cfg.max_iterations) {
    CrossResult next = deim_fs(oracle, out.result.guides, cfg);
    ++out.iterations;
    bool all_converged = true;
    for (Index i = 0; i < d; ++i) {
      const double cur = spectrum_norm(next.spectrum, i);
      const double prev = prev_norms[static_cast<size_t>(i)];
      const double change = cur > 0.0 ? std::abs(cur - prev) / cur : std::abs(cur - prev);
      if (change >= cfg.convergence_tol) all_converged = false;
      prev_norms[static_cast<size_t>(i)] = cur;
    }
    out.result = std::move(next);
    if (all_converged) {
      out.converged = true;
      break;
    }
  }
  return out;
}

TuckerTensor hosvd(const DenseTensor& t, const std::vector<Index>& multirank) {
  if (static_cast<Index>(multirank.size()) != t.order()) {
    throw std::invalid_argument("multirank must have one entry per mode");
  }
  TuckerTensor out;
  out.factors.resize(static_cast<size_t>(t.order()));
  DenseTensor core = t;
  for (Index i = 0; i < t.order(); ++i) {
    const Index ri = multirank[static_cast<size_t>(i)];
    if (ri < 1 || ri > t.dim(i)) {
      throw std::invalid_argument("rank out of range at mode " + std::to_string(i));
    }
    out.factors[static_cast<size_t>(i)] = truncated_left_svd(unfold(t, i), ri).u;
    core = mode_product(core, out.factors[static_cast<size_t>(i)].transpose(), i);
  }
  out.core = std::move(core);
  return out;
}

TuckerTensor fstd(const FiberOracle& oracle, const std::vector<Index>& fiber_counts,
                  std::uint64_t seed) {
  const Index d = oracle.order();
  if (static_cast<Index>(fiber_counts.size()) != d) {
    throw std::invalid_argument("one fiber count per mode is required");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Index>> picks(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const Index n = oracle.shape()[static_cast<size_t>(i)];
    if (fiber_counts[static_cast<size_t>(i)] < 1 || fiber_counts[static_cast<size_t>(i)] > n) {
      throw std::invalid_argument("fiber count out of range at mode " + std::to_string(i));
    }
    picks[static_cast<size_t>(i)].push_back(static_cast<Index>(rng() % static_cast<std::uint64_t>(n)));
  }

  auto skeleton_factors = [&](const FiberSampleSet& s) {
    std::vector<Eigen::MatrixXd> factors(static_cast<size_t>(d));
    for (Index i = 0; i < d; ++i) {
      const Eigen::MatrixXd wi = unfold(s.intersection, i);
      if (wi.norm() == 0.0) {
        throw IllConditionedIntersectionError("intersection unfolding is numerically zero at mode " +
                                              std::to_string(i));
      }
      factors[static_cast<size_t>(i)] = s.fiber_matrices[static_cast<size_t>(i)] * pseudo_inverse(wi);
    }
    return factors;
  };

  auto needs_more = [&]() {
    for (Index i = 0; i < d; ++i) {
      if (static_cast<Index>(picks[static_cast<size_t>(i)].size()) < fiber_counts[static_cast<size_t>(i)]) return true;
    }
    return false;
  };

  while (needs_more()) {
    FiberSampleSet s = gather_samples(oracle, picks);
    const auto factors = skeleton_factors(s);
    // Indices appended during this sweep must not enter the residual model:
    // the gathered fibers and factors correspond to the sweep-start picks.
    const std::vector<std::vector<Index>> base = picks;
    for (Index i = 0; i < d; ++i) {
      auto& pi = picks[static_cast<size_t>(i)];
      if (static_cast<Index>(pi.size()) >= fiber_counts[static_cast<size_t>(i)]) continue;
      // Model fibers along mode i at the currently sampled cross sections.
      DenseTensor t = mode_product(s.intersection, factors[static_cast<size_t>(i)], i);
      for (Index k = 0; k < d; ++k) {
        if (k == i) continue;
        const auto& pk = base[static_cast<size_t>(k)];
        const auto& mk = factors[static_cast<size_t>(k)];
        Eigen::MatrixXd rows(static_cast<Index>(pk.size()), mk.cols());
        for (size_t r = 0; r < pk.size(); ++r) rows.row(static_cast<Index>(r)) = mk.row(pk[r]);
        t = mode_product(t, rows, k);
      }
      const Eigen::MatrixXd residual = s.fiber_matrices[static_cast<size_t>(i)] - unfold(t, i);
      Index best = -1;
      double best_val = -1.0;
      for (Index row = 0; row < residual.rows(); ++row) {
        if (std::find(pi.begin(), pi.end(), row) != pi.end()) continue;
        const double val = residual.row(row).cwiseAbs().maxCoeff();
        if (val > best_val) {
          best_val = val;
          best = row;
        }
      }
      pi.push_back(best);
    }
  }

  FiberSampleSet s = gather_samples(oracle, picks);
  TuckerTensor out;
  out.factors = skeleton_factors(s);
  out.core = std::move(s.intersection);
  return out;
}

double absolute_error(const TuckerTensor& approx, const DenseTensor& truth) {
  approx.validate();
  if (approx.shape() != truth.shape()) {
    throw std::invalid_argument("approximation and truth shapes differ");
  }
  const Index d = truth.order();
  // Expand all modes but the last, then stream over last-mode slices so the
  // reconstruction is never materialized alongside the truth.
  DenseTensor partial = approx.core;
  for (Index k = 0; k + 1 < d; ++k) partial = mode_product(partial, approx.factors[static_cast<size_t>(k)], k);
  const Index n_last = truth.dim(d - 1);
  const Index slice_len = truth.size() / n_last;
  const auto& u_last = approx.factors[static_cast<size_t>(d - 1)];
  double err2 = 0.0;
  DenseTensor slice;
  for (Index j = 0; j < n_last; ++j) {
    slice = mode_product(partial, u_last.row(j), d - 1);
    Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<>> truth_slice(
        truth.data() + j, slice_len, Eigen::InnerStride<>(n_last));
    err2 += (slice.as_vector() - truth_slice).squaredNorm();
  }
  return std::sqrt(err2);
}

double relative_error(const TuckerTensor& approx, const DenseTensor& truth) {
  const double denom = frobenius_norm(truth);
  if (denom == 0.0) throw std::invalid_argument("relative error undefined for a zero truth tensor");
  return absolute_error(approx, truth) / denom;
}

}  // namespace tuckercross
