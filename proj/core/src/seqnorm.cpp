#include "faber/seqnorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "faber/error.hpp"

namespace faber {

void NormParams::validate() const {
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("norm exponent p must lie in [1,inf)");
  if (!(q > 0.0)) throw InvalidArgument("norm exponent q must be positive or infinite");
  if (!std::isfinite(r)) throw InvalidArgument("smoothness r must be finite");
}

namespace {

double lp_of(std::span<const double> c, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double v : c) s += std::abs(v);
    return s;
  }
  // Scale by the largest magnitude so tiny coefficients do not underflow.
  double top = 0.0;
  for (double v : c) top = std::max(top, std::abs(v));
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double v : c) s += std::pow(std::abs(v) / top, p);
  return top * std::pow(s, 1.0 / p);
}

}  // namespace

double level_lp(const FaberSeries& s, const LevelVector& j, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("level norm needs p >= 1");
  return lp_of(s.coefficients(j), p);
}

double seq_norm(const FaberSeries& s, const NormParams& params) {
  params.validate();
  const double exponent = params.r - 1.0 / params.p;
  double sup = 0.0;
  double sum = 0.0;
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    const int order = reduced_order(s.levels()[l]);
    const double term = std::exp2(order * exponent) * lp_of(s.coefficients(l), params.p);
    if (std::isinf(params.q)) {
      sup = std::max(sup, term);
    } else {
      sum += std::pow(term, params.q);
    }
  }
  return std::isinf(params.q) ? sup : std::pow(sum, 1.0 / params.q);
}

std::vector<ProfileEntry> decay_profile(const FaberSeries& s, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("decay profile needs p >= 1");
  std::vector<ProfileEntry> profile(static_cast<std::size_t>(s.budget()) + 1);
  for (std::size_t o = 0; o < profile.size(); ++o) profile[o].order = static_cast<int>(o);
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    auto& entry = profile[static_cast<std::size_t>(reduced_order(s.levels()[l]))];
    entry.value = std::max(entry.value, lp_of(s.coefficients(l), p));
  }
  return profile;
}

std::vector<ProfileEntry> decay_profile(const FunctionHandle& f, double p, int n) {
  if (n < 2) throw InvalidArgument("decay profile needs n >= 2, got " + std::to_string(n));
  return decay_profile(analyze(f, n), p);
}

}  // namespace faber
