#include "faber/series.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "faber/basis.hpp"
#include "faber/error.hpp"
#include "faber/parallel.hpp"

namespace faber {

FaberSeries::FaberSeries(int budget, int dim)
    : budget_(budget), dim_(dim), levels_(levels_up_to(budget, dim)) {
  coeffs_.reserve(levels_.size());
  strides_.reserve(levels_.size());
  for (const auto& j : levels_) {
    coeffs_.emplace_back(translation_count(j), 0.0);
    std::vector<std::uint64_t> stride(j.dim());
    std::uint64_t s = 1;
    for (std::size_t i = j.dim(); i-- > 0;) {
      stride[i] = s;
      s *= axis_translation_count(j[i]);
    }
    strides_.push_back(std::move(stride));
  }
}

std::ptrdiff_t FaberSeries::find_level(const LevelVector& j) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), j);
  if (it == levels_.end() || *it != j) return -1;
  return it - levels_.begin();
}

std::span<const double> FaberSeries::coefficients(std::size_t level_index) const {
  return coeffs_.at(level_index);
}

std::span<double> FaberSeries::coefficients(std::size_t level_index) {
  return coeffs_.at(level_index);
}

std::span<const double> FaberSeries::coefficients(const LevelVector& j) const {
  const auto index = find_level(j);
  if (index < 0) throw InvalidArgument("level is not stored in the series");
  return coeffs_[static_cast<std::size_t>(index)];
}

std::span<double> FaberSeries::coefficients(const LevelVector& j) {
  const auto index = find_level(j);
  if (index < 0) throw InvalidArgument("level is not stored in the series");
  return coeffs_[static_cast<std::size_t>(index)];
}

double FaberSeries::at(const LevelVector& j, const TranslationVector& k) const {
  return coefficients(j)[flat_index(j, k)];
}

double& FaberSeries::at(const LevelVector& j, const TranslationVector& k) {
  return coefficients(j)[flat_index(j, k)];
}

std::size_t FaberSeries::size() const noexcept {
  std::size_t total = 0;
  for (const auto& c : coeffs_) total += c.size();
  return total;
}

std::span<const std::uint64_t> FaberSeries::strides(std::size_t level_index) const {
  return strides_.at(level_index);
}

FaberSeries& FaberSeries::operator*=(double alpha) {
  for (auto& level : coeffs_) {
    for (double& c : level) c *= alpha;
  }
  return *this;
}

FaberSeries& FaberSeries::operator+=(const FaberSeries& other) {
  if (other.budget_ != budget_ || other.dim_ != dim_) {
    throw InvalidArgument("adding series of different shape");
  }
  for (std::size_t l = 0; l < coeffs_.size(); ++l) {
    for (std::size_t i = 0; i < coeffs_[l].size(); ++i) coeffs_[l][i] += other.coeffs_[l][i];
  }
  return *this;
}

double max_abs_difference(const FaberSeries& a, const FaberSeries& b) {
  if (a.budget_ != b.budget_ || a.dim_ != b.dim_) {
    throw InvalidArgument("comparing series of different shape");
  }
  double worst = 0.0;
  for (std::size_t l = 0; l < a.coeffs_.size(); ++l) {
    for (std::size_t i = 0; i < a.coeffs_[l].size(); ++i) {
      worst = std::max(worst, std::abs(a.coeffs_[l][i] - b.coeffs_[l][i]));
    }
  }
  return worst;
}

double coeff(SampleCache& cache, const LevelVector& j, const TranslationVector& k) {
  if (j.dim() != cache.function().dim()) {
    throw InvalidArgument("level dimension does not match the function");
  }
  const auto points = coeff_sample_points(j, k);
  std::vector<double> values(points.size());
  for (std::size_t t = 0; t < points.size(); ++t) values[t] = cache.value(points[t]);

  // Apply (+1, -2, +1) along each active axis, innermost axis first. In
  // tensor order the innermost remaining active axis indexes consecutive
  // triples.
  std::size_t active = 0;
  for (std::size_t i = j.dim(); i-- > 0;) {
    if (j[i] < 0) continue;
    ++active;
    const std::size_t outer = values.size() / 3;
    for (std::size_t o = 0; o < outer; ++o) {
      values[o] = values[3 * o] - 2.0 * values[3 * o + 1] + values[3 * o + 2];
    }
    values.resize(outer);
  }
  const double scale = std::ldexp(active % 2 == 0 ? 1.0 : -1.0, -static_cast<int>(active));
  return scale * values.front();
}

FaberSeries analyze(SampleCache& cache, int n) {
  const int d = static_cast<int>(cache.function().dim());
  FaberSeries s(n, d);
  parallel_for(s.level_count(), [&](std::size_t l) {
    const auto& j = s.levels()[l];
    auto out = s.coefficients(l);
    std::size_t i = 0;
    for (const auto& k : translations(j)) out[i++] = coeff(cache, j, k);
  });
  return s;
}

FaberSeries analyze(const FunctionHandle& f, int n) {
  SampleCache cache(f);
  return analyze(cache, n);
}

namespace {

void check_point(const FaberSeries& s, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(s.dim())) {
    throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, series has " +
                          std::to_string(s.dim()));
  }
  for (double xi : x) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw InvalidArgument("point coordinate " + std::to_string(xi) + " outside [0,1]");
    }
  }
}

struct AxisTerm {
  std::uint64_t k = 0;
  double value = 0.0;
};

}  // namespace

double evaluate(const FaberSeries& s, std::span<const double> x) {
  check_point(s, x);
  const std::size_t d = x.size();
  const int n = s.budget();
  const std::size_t per_axis = static_cast<std::size_t>(n) + 1;

  // Active translation and hat value for every axis and level 0..n.
  std::vector<AxisTerm> table(d * per_axis);
  for (std::size_t i = 0; i < d; ++i) {
    for (int l = 0; l <= n; ++l) {
      const double scaled = std::ldexp(x[i], l);
      const std::uint64_t last = (std::uint64_t{1} << l) - 1;
      const auto k = std::min(static_cast<std::uint64_t>(scaled), last);
      table[i * per_axis + static_cast<std::size_t>(l)] = {k, tent(scaled - static_cast<double>(k))};
    }
  }

  std::vector<std::size_t> boundary_axes;
  boundary_axes.reserve(d);
  double sum = 0.0;
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    const auto& j = s.levels()[l];
    const auto stride = s.strides(l);
    std::uint64_t base = 0;
    double weight = 1.0;
    boundary_axes.clear();
    for (std::size_t i = 0; i < d && weight != 0.0; ++i) {
      if (j[i] < 0) {
        boundary_axes.push_back(i);
        continue;
      }
      const auto& term = table[i * per_axis + static_cast<std::size_t>(j[i])];
      base += term.k * stride[i];
      weight *= term.value;
    }
    if (weight == 0.0) continue;
    const auto c = s.coefficients(l);
    const std::size_t combos = std::size_t{1} << boundary_axes.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
      std::uint64_t offset = base;
      double w = weight;
      for (std::size_t b = 0; b < boundary_axes.size(); ++b) {
        const std::size_t i = boundary_axes[b];
        if (mask >> b & 1U) {
          offset += stride[i];
          w *= x[i];
        } else {
          w *= 1.0 - x[i];
        }
      }
      sum += c[offset] * w;
    }
  }
  return sum;
}

FunctionHandle synthesize(FaberSeries s) {
  auto shared = std::make_shared<const FaberSeries>(std::move(s));
  const auto d = static_cast<std::size_t>(shared->dim());
  return FunctionHandle(
      d, [shared](std::span<const double> x) { return evaluate(*shared, x); },
      "faber-sum(n=" + std::to_string(shared->budget()) + ")");
}

double integrate(const FaberSeries& s) {
  double total = 0.0;
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    const auto& j = s.levels()[l];
    double w = 1.0;
    for (int e : j.entries()) w *= hat_integral(e);
    double level_sum = 0.0;
    for (double c : s.coefficients(l)) level_sum += c;
    total += w * level_sum;
  }
  return total;
}

}  // namespace faber
