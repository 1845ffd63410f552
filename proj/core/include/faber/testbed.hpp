#pragma once

// Test functions with controlled mixed smoothness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faber/function.hpp"
#include "faber/series.hpp"

namespace faber {

struct TestFunction {
  FunctionHandle handle;
  std::optional<double> integral;     // exact integral over [0,1]^d
  std::optional<double> l2_norm;      // exact L_2 norm
  std::optional<FaberSeries> series;  // exact finite Faber expansion
};

/// Faber sum with c_{j,k} = 2^{-|j|_1/p} * sigma_{j,k}, sigma = +-1 from a
/// counter-based hash of (seed, j, k), over all levels j >= 0 (no -1
/// entries) with |j|_1 <= depth. Every such level has level_lp == 1.
TestFunction extremal(double p, int depth, std::uint64_t seed, int d);

/// prod_i |x_i - c_i| for an interior, non-dyadic anchor c.
TestFunction kink(std::vector<double> anchor);

/// c_i = frac(1/sqrt(2) + i/sqrt(3)), i = 0..d-1.
std::vector<double> default_kink_anchor(int d);

/// v_{j,0}(x_1), constant along the remaining axes.
TestFunction hat_family(int j, int d);

/// Smooth references: "const", "multilinear", "x2", "exp", "poly-mix".
TestFunction smooth(const std::string& id, int d);

/// The finite Faber sum given by s.
TestFunction prescribed(FaberSeries s);

struct CatalogParams {
  double p = 2.0;
  int depth = 14;
  std::uint64_t seed = 0;
  int level = 0;
  std::vector<double> anchor;  // empty: default_kink_anchor
};

/// Every id accepted by from_catalog.
std::vector<std::string> catalog_ids();

/// Catalog lookup by id: the smooth ids plus "extremal", "kink", "hat".
TestFunction from_catalog(const std::string& id, int d, const CatalogParams& params = {});

}  // namespace faber
