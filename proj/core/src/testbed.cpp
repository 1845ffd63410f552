#include "faber/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "faber/basis.hpp"
#include "faber/error.hpp"
#include "faber/parallel.hpp"
#include "faber/util.hpp"

namespace faber {

namespace {

void check_dim(int d) {
  if (d <= 0) throw InvalidArgument("dimension must be positive");
}

std::uint64_t level_key(const LevelVector& j) {
  std::uint64_t key = 0;
  for (int e : j.entries()) key = mix64(key ^ static_cast<std::uint64_t>(e + 1));
  return key;
}

// Product of a univariate factor over the axes.
template <typename Factor>
FunctionHandle separable(int d, std::string label, Factor factor) {
  return FunctionHandle(
      static_cast<std::size_t>(d),
      [factor](std::span<const double> x) {
        double v = 1.0;
        for (double xi : x) v *= factor(xi);
        return v;
      },
      std::move(label));
}

bool is_dyadic(double c) {
  const double scaled = std::ldexp(c, 30);
  return scaled == std::floor(scaled);
}

}  // namespace

TestFunction extremal(double p, int depth, std::uint64_t seed, int d) {
  check_dim(d);
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("extremal needs 1 <= p < inf");
  if (depth < 1) throw InvalidArgument("extremal needs depth >= 1");
  FaberSeries s(depth, d);
  parallel_for(s.level_count(), [&](std::size_t l) {
    const auto& j = s.levels()[l];
    if (std::any_of(j.entries().begin(), j.entries().end(), [](int e) { return e < 0; })) return;
    const double magnitude = std::exp2(-reduced_order(j) / p);
    const std::uint64_t key = level_key(j);
    auto c = s.coefficients(l);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = (counter_hash(seed, key, i) >> 63) ? -magnitude : magnitude;
    }
  });
  TestFunction out;
  out.integral = integrate(s);
  out.handle = synthesize(s);
  out.series = std::move(s);
  return out;
}

std::vector<double> default_kink_anchor(int d) {
  check_dim(d);
  std::vector<double> c(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const double v = std::numbers::sqrt2 / 2.0 + i / std::numbers::sqrt3;
    c[static_cast<std::size_t>(i)] = v - std::floor(v);
  }
  return c;
}

TestFunction kink(std::vector<double> anchor) {
  if (anchor.empty()) throw InvalidArgument("kink needs at least one axis");
  double integral = 1.0;
  double l2_squared = 1.0;
  for (double c : anchor) {
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("kink anchor must lie strictly inside (0,1)");
    if (is_dyadic(c)) {
      throw InvalidArgument("kink anchor " + format_double(c) +
                            " is dyadic; its expansion would be finite");
    }
    integral *= (c * c + (1.0 - c) * (1.0 - c)) / 2.0;
    l2_squared *= (c * c * c + (1.0 - c) * (1.0 - c) * (1.0 - c)) / 3.0;
  }
  const auto d = anchor.size();
  TestFunction out;
  out.handle = FunctionHandle(
      d,
      [anchor = std::move(anchor)](std::span<const double> x) {
        double v = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) v *= std::abs(x[i] - anchor[i]);
        return v;
      },
      "kink");
  out.integral = integral;
  out.l2_norm = std::sqrt(l2_squared);
  return out;
}

TestFunction hat_family(int j, int d) {
  check_dim(d);
  if (j < 0) throw InvalidArgument("hat family needs level >= 0");
  if (j > kMaxLevel) throw InvalidArgument("hat level exceeds the level limit");
  TestFunction out;
  out.handle = FunctionHandle(
      static_cast<std::size_t>(d), [j](std::span<const double> x) { return hat_eval(j, 0, x[0]); },
      "hat(" + std::to_string(j) + ")");
  out.integral = hat_integral(j);
  out.l2_norm = std::sqrt(std::exp2(-j) / 3.0);
  if (j <= 20) {
    FaberSeries s(j, d);
    std::vector<int> entries(static_cast<std::size_t>(d), -1);
    entries[0] = j;
    const LevelVector level(entries);
    auto c = s.coefficients(level);
    // k_1 = 0 occupies the first 2^{d-1} entries (last axes fastest).
    std::fill(c.begin(), c.begin() + (std::ptrdiff_t{1} << (d - 1)), 1.0);
    out.series = std::move(s);
  }
  return out;
}

TestFunction smooth(const std::string& id, int d) {
  check_dim(d);
  const double dd = d;
  TestFunction out;
  if (id == "const") {
    out.handle = separable(d, id, [](double) { return 1.0; });
    out.integral = 1.0;
    out.l2_norm = 1.0;
  } else if (id == "multilinear") {
    out.handle = separable(d, id, [](double x) { return 0.5 + x; });
    out.integral = 1.0;
    out.l2_norm = std::pow(13.0 / 12.0, dd / 2.0);
  } else if (id == "x2") {
    out.handle = separable(d, id, [](double x) { return x * x; });
    out.integral = std::pow(3.0, -dd);
    out.l2_norm = std::pow(5.0, -dd / 2.0);
  } else if (id == "exp") {
    out.handle = FunctionHandle(
        static_cast<std::size_t>(d),
        [](std::span<const double> x) {
          double s = 0.0;
          for (double xi : x) s += xi;
          return std::exp(s);
        },
        id);
    out.integral = std::pow(std::numbers::e - 1.0, dd);
    out.l2_norm = std::pow((std::numbers::e * std::numbers::e - 1.0) / 2.0, dd / 2.0);
  } else if (id == "poly-mix") {
    out.handle = separable(d, id, [](double x) { return 1.0 + x - 2.0 * x * x * x; });
    out.integral = 1.0;
    out.l2_norm = std::pow(116.0 / 105.0, dd / 2.0);
  } else {
    throw InvalidArgument("unknown smooth function id '" + id + "'");
  }
  return out;
}

TestFunction prescribed(FaberSeries s) {
  TestFunction out;
  out.integral = integrate(s);
  out.handle = synthesize(s);
  out.series = std::move(s);
  return out;
}

std::vector<std::string> catalog_ids() {
  return {"const", "multilinear", "x2", "exp", "poly-mix", "extremal", "kink", "hat"};
}

TestFunction from_catalog(const std::string& id, int d, const CatalogParams& params) {
  if (id == "extremal") return extremal(params.p, params.depth, params.seed, d);
  if (id == "kink") {
    if (params.anchor.empty()) return kink(default_kink_anchor(d));
    if (params.anchor.size() != static_cast<std::size_t>(d)) {
      throw InvalidArgument("kink anchor has the wrong number of coordinates");
    }
    return kink(params.anchor);
  }
  if (id == "hat") return hat_family(params.level, d);
  return smooth(id, d);
}

}  // namespace faber
