#pragma once

// Faber-Schauder analysis and synthesis on [0,1]^d.
//
// The coefficient of level j and translation k is the scaled mixed second
// difference
//
//   d_{j,k}(f) = (-2)^{-|e(j)|} * Delta^{2,e(j)}_{2^-(j+1)} f(x_{j,k}),
//
// taken along the active axes e(j) = {i : j_i != -1}; axes at level -1 take
// the function value. In one dimension this is the hierarchical surplus
// f(mid) - (f(left) + f(right)) / 2. The truncated interpolant is
//
//   I_n f = sum_{|j|_1 <= n} sum_k d_{j,k}(f) v_{j,k}.

#include <cstdint>
#include <span>
#include <vector>

#include "faber/dyadic.hpp"
#include "faber/function.hpp"

namespace faber {

/// Dense per-level coefficient arrays for every level with |j|_1 <= budget.
class FaberSeries {
 public:
  FaberSeries() = default;
  /// All coefficients zero.
  FaberSeries(int budget, int dim);

  int budget() const noexcept { return budget_; }
  int dim() const noexcept { return dim_; }

  const std::vector<LevelVector>& levels() const noexcept { return levels_; }
  std::size_t level_count() const noexcept { return levels_.size(); }
  /// Index of j among levels(), or -1 when j is not stored.
  std::ptrdiff_t find_level(const LevelVector& j) const;

  std::span<const double> coefficients(std::size_t level_index) const;
  std::span<double> coefficients(std::size_t level_index);
  /// Throws InvalidArgument when the level is not stored.
  std::span<const double> coefficients(const LevelVector& j) const;
  std::span<double> coefficients(const LevelVector& j);

  double at(const LevelVector& j, const TranslationVector& k) const;
  double& at(const LevelVector& j, const TranslationVector& k);

  /// Total number of stored coefficients.
  std::size_t size() const noexcept;

  /// Row-major strides of a level's array (last axis stride 1).
  std::span<const std::uint64_t> strides(std::size_t level_index) const;

  FaberSeries& operator*=(double alpha);
  FaberSeries& operator+=(const FaberSeries& other);
  friend FaberSeries operator*(double alpha, FaberSeries s) { return s *= alpha; }
  friend FaberSeries operator+(FaberSeries a, const FaberSeries& b) { return a += b; }

  /// Largest |a - b| over all coefficients; shapes must match.
  friend double max_abs_difference(const FaberSeries& a, const FaberSeries& b);

  bool operator==(const FaberSeries&) const = default;

 private:
  int budget_ = 0;
  int dim_ = 0;
  std::vector<LevelVector> levels_;
  std::vector<std::vector<double>> coeffs_;
  std::vector<std::vector<std::uint64_t>> strides_;
};

/// d_{j,k}(f) from the samples in cache.
double coeff(SampleCache& cache, const LevelVector& j, const TranslationVector& k);

/// All coefficients with |j|_1 <= n. Levels are computed in parallel and
/// share the cache, so f is evaluated exactly once per node of node_set(n,d).
FaberSeries analyze(SampleCache& cache, int n);
FaberSeries analyze(const FunctionHandle& f, int n);

/// I_n f(x), using that within a level at most one translation per active
/// axis is non-zero at x (left-closed cells; both neighbours vanish on the
/// shared boundary).
double evaluate(const FaberSeries& s, std::span<const double> x);

/// Handle evaluating the finite Faber sum described by s.
FunctionHandle synthesize(FaberSeries s);

/// Exact integral of I_n f over [0,1]^d.
double integrate(const FaberSeries& s);

}  // namespace faber
