#include "faber/basis.hpp"

#include <cmath>
#include <string>

#include "faber/error.hpp"

namespace faber {

double tent(double t) noexcept {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return t <= 0.5 ? 2.0 * t : 2.0 - 2.0 * t;
}

double hat_eval(int j, std::uint64_t k, double x) {
  if (k >= axis_translation_count(j)) {
    throw InvalidArgument("translation " + std::to_string(k) + " out of range for level " +
                          std::to_string(j));
  }
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("hat argument outside [0,1]");
  if (j < 0) return k == 0 ? 1.0 - x : x;
  return tent(std::ldexp(x, j) - static_cast<double>(k));
}

double tensor_eval(const LevelVector& j, const TranslationVector& k, std::span<const double> x) {
  check_translation(j, k);
  if (x.size() != j.dim()) throw InvalidArgument("point dimension does not match the level");
  double value = 1.0;
  for (std::size_t i = 0; i < j.dim() && value != 0.0; ++i) value *= hat_eval(j[i], k[i], x[i]);
  return value;
}

double hat_integral(int j) noexcept { return j < 0 ? 0.5 : std::ldexp(1.0, -j - 1); }

}  // namespace faber
