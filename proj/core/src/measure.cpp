#include "faber/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "faber/error.hpp"
#include "faber/parallel.hpp"
#include "faber/util.hpp"

namespace faber {

namespace {

constexpr std::size_t kChunk = 1024;

double power_abs(double v, double q) {
  const double a = std::abs(v);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  return std::pow(a, q);
}

// Sum of body(i) over [0, count), chunked independently of the worker count.
template <typename Body>
double chunked_sum(std::size_t count, Body&& body) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(count, begin + kChunk);
    std::vector<double> local(end - begin);
    for (std::size_t i = begin; i < end; ++i) local[i - begin] = body(i);
    partial[c] = pairwise_sum(local);
  });
  return pairwise_sum(partial);
}

double composite_integral(const FunctionHandle& g, double q, int order, int level) {
  const auto [nodes, weights] = gauss_legendre(order);
  const std::size_t d = g.dim();
  const std::uint64_t per_axis = std::uint64_t{1} << level;
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= per_axis;
  const double h = std::ldexp(1.0, -level);
  const double cell_volume = std::pow(h, static_cast<double>(d));
  const std::size_t points_per_cell = static_cast<std::size_t>(std::pow(order, d));

  return chunked_sum(cells, [&](std::size_t cell) {
    std::vector<double> lower(d);
    std::uint64_t rest = cell;
    for (std::size_t i = d; i-- > 0;) {
      lower[i] = static_cast<double>(rest % per_axis) * h;
      rest /= per_axis;
    }
    std::vector<double> x(d);
    double acc = 0.0;
    for (std::size_t t = 0; t < points_per_cell; ++t) {
      std::size_t r = t;
      double w = 1.0;
      for (std::size_t i = d; i-- > 0;) {
        const std::size_t node = r % static_cast<std::size_t>(order);
        r /= static_cast<std::size_t>(order);
        x[i] = lower[i] + h * nodes[node];
        w *= weights[node];
      }
      acc += w * power_abs(g(x), q);
    }
    return acc * cell_volume;
  });
}

Measurement composite(const FunctionHandle& g, double q, const CompositeGauss& m) {
  const double coarse = composite_integral(g, q, m.order, m.mesh_level);
  const double fine = composite_integral(g, q, m.order, m.mesh_level + 1);
  return {std::pow(coarse, 1.0 / q), std::abs(std::pow(fine, 1.0 / q) - std::pow(coarse, 1.0 / q))};
}

Measurement stratified(const FunctionHandle& g, double q, const StratifiedMc& m) {
  const std::size_t d = g.dim();
  const std::size_t n = m.samples;
  int s = static_cast<int>(std::floor(std::log2(static_cast<double>(n)) / static_cast<double>(d)));
  s = std::max(s, 0);
  const std::uint64_t per_axis = std::uint64_t{1} << s;
  std::size_t strata = 1;
  for (std::size_t i = 0; i < d; ++i) strata *= per_axis;
  if (strata < 2) strata = 0;  // a single stratum gives no variance estimate
  const std::size_t plain = n - strata;
  const double side = std::ldexp(1.0, -s);

  std::vector<double> y(n);
  parallel_for((n + kChunk - 1) / kChunk, [&](std::size_t c) {
    std::vector<double> x(d);
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t t = c * kChunk; t < end; ++t) {
      if (t < strata) {
        std::uint64_t rest = t;
        for (std::size_t i = d; i-- > 0;) {
          const auto cell = rest % per_axis;
          rest /= per_axis;
          x[i] = (static_cast<double>(cell) + to_unit(counter_hash(m.seed, t, i))) * side;
        }
      } else {
        for (std::size_t i = 0; i < d; ++i) x[i] = to_unit(counter_hash(m.seed, t, i));
      }
      y[t] = power_abs(g(x), q);
    }
  });

  const std::span<const double> ys(y);
  double integral = 0.0;
  double variance = 0.0;
  if (strata > 0) {
    const double mean_s = pairwise_sum(ys.first(strata)) / static_cast<double>(strata);
    // Collapsed strata: neighbouring strata are paired and each pair's
    // squared difference estimates the variance of the pair sum.
    std::vector<double> diffs(strata / 2);
    for (std::size_t p = 0; p < diffs.size(); ++p) {
      const double delta = y[2 * p] - y[2 * p + 1];
      diffs[p] = delta * delta;
    }
    const double var_s = pairwise_sum(diffs) / (static_cast<double>(strata) * strata);
    integral += static_cast<double>(strata) * mean_s;
    variance += static_cast<double>(strata) * strata * var_s;
  }
  if (plain > 0) {
    const auto rest = ys.subspan(strata);
    const double mean_p = pairwise_sum(rest) / static_cast<double>(plain);
    double var_p = 0.0;
    if (plain > 1) {
      std::vector<double> sq(plain);
      for (std::size_t i = 0; i < plain; ++i) sq[i] = (rest[i] - mean_p) * (rest[i] - mean_p);
      var_p = pairwise_sum(sq) / static_cast<double>(plain - 1) / static_cast<double>(plain);
    }
    integral += static_cast<double>(plain) * mean_p;
    variance += static_cast<double>(plain) * plain * var_p;
  }
  integral /= static_cast<double>(n);
  variance /= static_cast<double>(n) * static_cast<double>(n);

  const double value = std::pow(integral, 1.0 / q);
  const double error =
      integral > 0.0 ? value / (q * integral) * std::sqrt(variance) : 0.0;
  return {value, error};
}

double grid_sup(const FunctionHandle& g, int level) {
  const std::size_t d = g.dim();
  const std::uint64_t per_axis = (std::uint64_t{1} << level) + 1;
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < d; ++i) points *= per_axis;
  const std::size_t chunks = (points + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> x(d);
    double best = 0.0;
    const std::uint64_t end = std::min<std::uint64_t>(points, (c + 1) * kChunk);
    for (std::uint64_t t = c * kChunk; t < end; ++t) {
      std::uint64_t rest = t;
      for (std::size_t i = d; i-- > 0;) {
        x[i] = std::ldexp(static_cast<double>(rest % per_axis), -level);
        rest /= per_axis;
      }
      best = std::max(best, std::abs(g(x)));
    }
    partial[c] = best;
  });
  return *std::max_element(partial.begin(), partial.end());
}

Measurement sup(const FunctionHandle& g, const SupGrid& m) {
  const double fine = grid_sup(g, m.level);
  const double coarse = grid_sup(g, m.level - 1);
  return {fine, fine - coarse};
}

}  // namespace

void MeasureSpec::validate() const {
  if (std::isnan(q) || q < 1.0) throw InvalidArgument("q must be >= 1 (got " + std::to_string(q) + ")");
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, CompositeGauss>) {
          if (m.order < 2) throw InvalidArgument("Gauss order must be >= 2");
          if (m.mesh_level < 1) throw InvalidArgument("mesh level must be >= 1");
          if (std::isinf(q)) throw InvalidArgument("q = inf is measured with sup_grid only");
        } else if constexpr (std::is_same_v<M, StratifiedMc>) {
          if (m.samples < kMinSamples) {
            throw InvalidArgument("stratified_mc needs at least " + std::to_string(kMinSamples) +
                                  " samples");
          }
          if (std::isinf(q)) throw InvalidArgument("q = inf is measured with sup_grid only");
        } else {
          if (m.level < 1) throw InvalidArgument("sup grid level must be >= 1");
          if (!std::isinf(q)) throw InvalidArgument("sup_grid measures q = inf only");
        }
      },
      method);
}

void MeasureSpec::validate(std::size_t dim) const {
  validate();
  if (dim == 0) throw InvalidArgument("dimension must be positive");
  const auto d = static_cast<long>(dim);
  if (const auto* m = std::get_if<CompositeGauss>(&method)) {
    if (d > kMaxCompositeDim) {
      throw InvalidArgument("composite quadrature supports d <= " +
                            std::to_string(kMaxCompositeDim) + "; use stratified_mc");
    }
    if ((m->mesh_level + 1) * d > kMaxCompositeCellBits) {
      throw InvalidArgument("composite mesh of level " + std::to_string(m->mesh_level) +
                            " in d=" + std::to_string(d) +
                            " has too many cells; use stratified_mc instead");
    }
  } else if (const auto* m = std::get_if<SupGrid>(&method)) {
    if ((m->level + 1) * d > kMaxCompositeCellBits) {
      throw InvalidArgument("sup grid of level " + std::to_string(m->level) + " in d=" +
                            std::to_string(d) + " has too many points");
    }
  }
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
  if (order < 1) throw InvalidArgument("Gauss order must be positive");
  const auto n = static_cast<std::size_t>(order);
  std::vector<double> nodes(n), weights(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map from [-1,1] to [0,1].
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = weights[n - 1 - i] = 0.5 * w;
  }
  return {nodes, weights};
}

Measurement lq_norm(const FunctionHandle& g, const MeasureSpec& spec) {
  spec.validate(g.dim());
  return std::visit(
      [&](const auto& m) -> Measurement {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, CompositeGauss>) {
          return composite(g, spec.q, m);
        } else if constexpr (std::is_same_v<M, StratifiedMc>) {
          return stratified(g, spec.q, m);
        } else {
          return sup(g, m);
        }
      },
      spec.method);
}

Measurement lq_error(const FunctionHandle& f, const FaberSeries& s, const MeasureSpec& spec) {
  if (f.dim() != static_cast<std::size_t>(s.dim())) {
    throw InvalidArgument("function and series dimensions differ");
  }
  const FunctionHandle diff(
      f.dim(), [&f, &s](std::span<const double> x) { return f(x) - evaluate(s, x); },
      "error(" + f.label() + ")");
  return lq_norm(diff, spec);
}

double block_lq_exact(const LevelVector& j, std::span<const double> coeffs, double q) {
  for (int e : j.entries()) {
    if (e < 0) throw InvalidArgument("block_lq_exact needs all level entries >= 0");
  }
  if (coeffs.size() != translation_count(j)) {
    throw InvalidArgument("coefficient count does not match the level");
  }
  if (!(q >= 1.0) || std::isinf(q)) throw InvalidArgument("block_lq_exact needs 1 <= q < inf");
  std::vector<double> powers(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) powers[i] = power_abs(coeffs[i], q);
  const double scale = std::exp2(-reduced_order(j)) /
                       std::pow(q + 1.0, static_cast<double>(j.dim()));
  return std::pow(pairwise_sum(powers) * scale, 1.0 / q);
}

}  // namespace faber
