#pragma once

// L_q norms on [0,1]^d for recovery errors.
//
// Three estimators:
//  - composite Gauss: tensor Gauss-Legendre of order G on every cell of the
//    uniform mesh of level L per axis (d <= 3). The error estimate is the
//    Richardson difference against the mesh of level L + 1.
//  - stratified Monte Carlo: one uniform draw in each of 2^{sd} strata,
//    s = floor(log2(N)/d), plus N - 2^{sd} plain uniform draws. Draws come
//    from a counter-based hash of (seed, sample index, axis), so results are
//    independent of the number of worker threads.
//  - sup grid (q = infinity only): max |g| over the (2^L + 1)^d grid; a lower
//    bound of the true supremum.
//
// Reductions use a fixed pairwise order.

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "faber/function.hpp"
#include "faber/series.hpp"

namespace faber {

inline constexpr int kDefaultGaussOrder = 5;
inline constexpr int kDefaultMeshOffset = 2;  // mesh level L = n + 2
inline constexpr std::size_t kDefaultSamples = 200000;
inline constexpr std::size_t kMinSamples = 1000;
inline constexpr int kMaxCompositeDim = 3;
/// Composite meshes (including the Richardson mesh) are capped at 2^30 cells.
inline constexpr int kMaxCompositeCellBits = 30;

struct CompositeGauss {
  int order = kDefaultGaussOrder;
  int mesh_level = 1;
};

struct StratifiedMc {
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
};

struct SupGrid {
  int level = 1;
};

struct MeasureSpec {
  double q = 2.0;
  std::variant<CompositeGauss, StratifiedMc, SupGrid> method = CompositeGauss{};

  /// Throws InvalidArgument on a violated invariant.
  void validate() const;
  /// validate() plus the limits that depend on the dimension (composite
  /// meshes for d <= 3 with a bounded cell count, bounded sup grids).
  void validate(std::size_t dim) const;
};

struct Measurement {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Gauss-Legendre nodes and weights on [0,1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order);

Measurement lq_norm(const FunctionHandle& g, const MeasureSpec& spec);

/// lq_norm of f - I_n f, with I_n f given by its series.
Measurement lq_error(const FunctionHandle& f, const FaberSeries& s, const MeasureSpec& spec);

/// Closed-form L_q norm of sum_k c_k v_{j,k} for a level with all j_i >= 0,
/// where the tents have disjoint interiors:
/// (sum_k |c_k|^q 2^{-|j|_1} / (q+1)^d)^{1/q}.
double block_lq_exact(const LevelVector& j, std::span<const double> coeffs, double q);

}  // namespace faber
