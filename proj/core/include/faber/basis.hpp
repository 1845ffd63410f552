#pragma once

#include <cstdint>
#include <span>

#include "faber/dyadic.hpp"

namespace faber {

/// Integrated Haar function: 2t on [0,1/2], 2-2t on [1/2,1], 0 elsewhere.
double tent(double t) noexcept;

/// Univariate Faber-Schauder function v_{j,k}(x).
///
/// For j >= 0 this is tent(2^j x - k). Level -1 carries the two boundary
/// functions v_{-1,0}(x) = 1 - x and v_{-1,1}(x) = x.
double hat_eval(int j, std::uint64_t k, double x);

/// Product of hat_eval over the axes.
double tensor_eval(const LevelVector& j, const TranslationVector& k, std::span<const double> x);

/// Integral of v_{j,k} over [0,1]: 2^-(j+1) for j >= 0, 1/2 for j = -1.
double hat_integral(int j) noexcept;

}  // namespace faber
