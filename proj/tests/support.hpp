#pragma once

#include <random>

#include "faber/series.hpp"

namespace faber::testing {

/// Series with coefficients uniform in [-1, 1].
inline FaberSeries random_series(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FaberSeries s(n, d);
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    for (double& c : s.coefficients(l)) c = unit(rng);
  }
  return s;
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(d);
  for (double& v : x) v = unit(rng);
  return x;
}

}  // namespace faber::testing
