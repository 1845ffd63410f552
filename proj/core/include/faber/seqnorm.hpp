#pragma once

// Sequence-space norms over Faber coefficients:
//
//   ||c | s^r_{p,q} b|| = ( sum_j [ 2^{|j|_1 (r - 1/p)} (sum_k |c_{j,k}|^p)^{1/p} ]^q )^{1/q}
//
// with the supremum over levels when q = infinity. Only levels stored in the
// series enter, so every value is a lower bound of the untruncated norm.

#include <limits>
#include <vector>

#include "faber/function.hpp"
#include "faber/series.hpp"

namespace faber {

struct NormParams {
  double r = 0.0;
  double p = 1.0;
  /// Use infinity for the supremum over levels.
  double q = std::numeric_limits<double>::infinity();

  /// r = 1/p, the limiting smoothness used throughout.
  static NormParams limiting(double p, double q) { return {1.0 / p, p, q}; }
  void validate() const;
};

/// (sum_k |c_{j,k}|^p)^{1/p} for one stored level.
double level_lp(const FaberSeries& s, const LevelVector& j, double p);

double seq_norm(const FaberSeries& s, const NormParams& params);

struct ProfileEntry {
  int order = 0;
  double value = 0.0;  // max of level_lp over levels of this reduced order
};

/// Per reduced order 0..n, the largest level_lp among levels of that order.
std::vector<ProfileEntry> decay_profile(const FaberSeries& s, double p);
std::vector<ProfileEntry> decay_profile(const FunctionHandle& f, double p, int n);

}  // namespace faber
