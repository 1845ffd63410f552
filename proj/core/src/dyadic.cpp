#include "faber/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_set>

#include "faber/error.hpp"

namespace faber {

namespace {

void check_level_entry(int level) {
  if (level < -1) {
    throw InvalidArgument("level entry " + std::to_string(level) + " is below -1");
  }
  if (level > kMaxLevel) {
    throw InvalidArgument("level entry " + std::to_string(level) + " exceeds the limit " +
                          std::to_string(kMaxLevel));
  }
}

void enumerate_levels(int budget, int d, std::vector<int>& prefix, std::vector<LevelVector>& out) {
  if (static_cast<int>(prefix.size()) == d) {
    out.emplace_back(prefix);
    return;
  }
  for (int level = -1; level <= budget; ++level) {
    prefix.push_back(level);
    enumerate_levels(budget - std::max(level, 0), d, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t scaled(const DyadicCoord& c, int level) { return c.numerator << (level - c.level); }

}  // namespace

LevelVector::LevelVector(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("level vector must have at least one axis");
  for (int e : entries_) check_level_entry(e);
}

LevelVector::LevelVector(std::initializer_list<int> entries)
    : LevelVector(std::vector<int>(entries)) {}

int reduced_order(const LevelVector& j) noexcept {
  int order = 0;
  for (int e : j.entries()) order += std::max(e, 0);
  return order;
}

std::size_t active_axes(const LevelVector& j) noexcept {
  return static_cast<std::size_t>(
      std::count_if(j.entries().begin(), j.entries().end(), [](int e) { return e != -1; }));
}

std::uint64_t axis_translation_count(int level) {
  check_level_entry(level);
  return level < 0 ? 2 : std::uint64_t{1} << level;
}

std::uint64_t translation_count(const LevelVector& j) {
  std::uint64_t count = 1;
  for (int e : j.entries()) {
    const std::uint64_t c = axis_translation_count(e);
    if (count > UINT64_MAX / c) throw InvalidArgument("translation count overflows 64 bits");
    count *= c;
  }
  return count;
}

void check_translation(const LevelVector& j, const TranslationVector& k) {
  if (k.dim() != j.dim()) {
    throw InvalidArgument("translation has " + std::to_string(k.dim()) + " axes, level has " +
                          std::to_string(j.dim()));
  }
  for (std::size_t i = 0; i < j.dim(); ++i) {
    if (k[i] >= axis_translation_count(j[i])) {
      throw InvalidArgument("translation " + std::to_string(k[i]) + " out of range for level " +
                            std::to_string(j[i]) + " on axis " + std::to_string(i));
    }
  }
}

std::uint64_t flat_index(const LevelVector& j, const TranslationVector& k) {
  check_translation(j, k);
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < j.dim(); ++i) index = index * axis_translation_count(j[i]) + k[i];
  return index;
}

TranslationVector translation_at(const LevelVector& j, std::uint64_t index) {
  if (index >= translation_count(j)) throw InvalidArgument("flat translation index out of range");
  std::vector<std::uint64_t> k(j.dim());
  for (std::size_t i = j.dim(); i-- > 0;) {
    const std::uint64_t c = axis_translation_count(j[i]);
    k[i] = index % c;
    index /= c;
  }
  return TranslationVector(std::move(k));
}

std::vector<LevelVector> levels_up_to(int n, int d) {
  if (d <= 0) throw InvalidArgument("dimension must be positive, got " + std::to_string(d));
  if (n < 0) throw InvalidArgument("budget must be non-negative, got " + std::to_string(n));
  if (n > kMaxLevel) throw InvalidArgument("budget exceeds the level limit");
  std::vector<LevelVector> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  enumerate_levels(n, d, prefix, out);
  return out;
}

TranslationRange::TranslationRange(LevelVector j) : level_(std::move(j)) {
  size_ = translation_count(level_);
  extents_.reserve(level_.dim());
  for (int e : level_.entries()) extents_.push_back(axis_translation_count(e));
}

TranslationRange::iterator::iterator(const TranslationRange* range, std::uint64_t position)
    : range_(range),
      position_(position),
      current_(std::vector<std::uint64_t>(range->extents_.size(), 0)) {}

TranslationRange::iterator& TranslationRange::iterator::operator++() {
  ++position_;
  for (std::size_t i = range_->extents_.size(); i-- > 0;) {
    if (++current_[i] < range_->extents_[i]) break;
    current_[i] = 0;
  }
  return *this;
}

DyadicCoord DyadicCoord::canonical() const noexcept {
  if (numerator == 0) return {0, 0};
  const int shift = std::min(std::countr_zero(numerator), level);
  return {numerator >> shift, level - shift};
}

double DyadicCoord::value() const noexcept {
  return std::ldexp(static_cast<double>(numerator), -level);
}

DyadicPoint::DyadicPoint(std::vector<DyadicCoord> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) {
    if (c.level < 0 || c.level > kMaxLevel) throw InvalidArgument("dyadic level out of range");
    if (c.numerator > (std::uint64_t{1} << c.level)) {
      throw InvalidArgument("dyadic coordinate " + std::to_string(c.numerator) + "/2^" +
                            std::to_string(c.level) + " lies outside [0,1]");
    }
    c = c.canonical();
  }
}

std::vector<double> DyadicPoint::to_doubles() const {
  std::vector<double> out(coords_.size());
  to_doubles(out);
  return out;
}

void DyadicPoint::to_doubles(std::span<double> out) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i].value();
}

bool DyadicPoint::operator<(const DyadicPoint& other) const {
  const std::size_t d = std::min(dim(), other.dim());
  for (std::size_t i = 0; i < d; ++i) {
    const int level = std::max(coords_[i].level, other.coords_[i].level);
    const std::uint64_t a = scaled(coords_[i], level);
    const std::uint64_t b = scaled(other.coords_[i], level);
    if (a != b) return a < b;
  }
  return dim() < other.dim();
}

std::size_t DyadicPointHash::operator()(const DyadicPoint& x) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& c : x.coords()) {
    std::uint64_t v = c.numerator * 64 + static_cast<std::uint64_t>(c.level);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

DyadicPoint node(const LevelVector& j, const TranslationVector& k) {
  check_translation(j, k);
  std::vector<DyadicCoord> coords(j.dim());
  for (std::size_t i = 0; i < j.dim(); ++i) coords[i] = {k[i], std::max(j[i], 0)};
  return DyadicPoint(std::move(coords));
}

std::vector<DyadicPoint> coeff_sample_points(const LevelVector& j, const TranslationVector& k) {
  check_translation(j, k);
  const std::size_t d = j.dim();
  for (int e : j.entries()) {
    if (e + 1 > kMaxLevel) throw InvalidArgument("stencil level exceeds the level limit");
  }
  std::vector<std::vector<DyadicCoord>> axis_points(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (j[i] < 0) {
      axis_points[i] = {{k[i], 0}};
    } else {
      const int fine = j[i] + 1;
      axis_points[i] = {{2 * k[i], fine}, {2 * k[i] + 1, fine}, {2 * k[i] + 2, fine}};
    }
  }
  std::vector<DyadicPoint> out;
  std::vector<std::size_t> idx(d, 0);
  std::vector<DyadicCoord> coords(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) coords[i] = axis_points[i][idx[i]];
    out.emplace_back(coords);
    std::size_t axis = d;
    while (axis-- > 0) {
      if (++idx[axis] < axis_points[axis].size()) break;
      idx[axis] = 0;
    }
    if (axis == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

namespace {

// The stencils of all translations of one level j cover, per axis, the grid
// of step 2^-(j_i+1) (or {0,1} for j_i = -1). Each level therefore
// contributes a product grid; coordinates are scaled to the common level
// n + 1 and deduplicated as integers.
template <typename Visit>
void visit_level_grids(int n, int d, Visit&& visit) {
  const int top = n + 1;
  std::vector<std::uint64_t> step(static_cast<std::size_t>(d));
  std::vector<std::uint64_t> extent(static_cast<std::size_t>(d));
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(d));
  std::vector<std::uint64_t> coord(static_cast<std::size_t>(d));
  for (const auto& j : levels_up_to(n, d)) {
    for (std::size_t i = 0; i < j.dim(); ++i) {
      if (j[i] < 0) {
        step[i] = std::uint64_t{1} << top;
        extent[i] = 2;
      } else {
        step[i] = std::uint64_t{1} << (top - j[i] - 1);
        extent[i] = (std::uint64_t{1} << (j[i] + 1)) + 1;
      }
    }
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < idx.size(); ++i) coord[i] = idx[i] * step[i];
      visit(std::span<const std::uint64_t>(coord));
      std::size_t axis = idx.size();
      while (axis-- > 0) {
        if (++idx[axis] < extent[axis]) break;
        idx[axis] = 0;
      }
      if (axis == static_cast<std::size_t>(-1)) break;
    }
  }
}

void check_node_args(int n, int d) {
  if (d <= 0) throw InvalidArgument("dimension must be positive, got " + std::to_string(d));
  if (n < 0) throw InvalidArgument("budget must be non-negative, got " + std::to_string(n));
  if (n + 1 > kMaxLevel) throw InvalidArgument("budget exceeds the level limit");
}

bool packable(int n, int d) { return static_cast<long>(d) * (n + 2) <= 64; }

std::uint64_t pack(std::span<const std::uint64_t> coord, int bits) {
  std::uint64_t key = 0;
  for (auto c : coord) key = (key << bits) | c;
  return key;
}

std::vector<std::uint64_t> packed_node_keys(int n, int d) {
  const int bits = n + 2;
  std::unordered_set<std::uint64_t> seen;
  visit_level_grids(n, d, [&](std::span<const std::uint64_t> c) { seen.insert(pack(c, bits)); });
  std::vector<std::uint64_t> keys(seen.begin(), seen.end());
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::unordered_set<DyadicPoint, DyadicPointHash> generic_node_points(int n, int d) {
  std::unordered_set<DyadicPoint, DyadicPointHash> seen;
  std::vector<DyadicCoord> coords(static_cast<std::size_t>(d));
  visit_level_grids(n, d, [&](std::span<const std::uint64_t> c) {
    for (std::size_t i = 0; i < c.size(); ++i) coords[i] = {c[i], n + 1};
    seen.emplace(coords);
  });
  return seen;
}

}  // namespace

NodeSet node_set(int n, int d) {
  check_node_args(n, d);
  NodeSet out;
  if (packable(n, d)) {
    const int bits = n + 2;
    const std::uint64_t mask = (bits == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    const auto keys = packed_node_keys(n, d);
    out.points.reserve(keys.size());
    std::vector<DyadicCoord> coords(static_cast<std::size_t>(d));
    for (auto key : keys) {
      for (std::size_t i = coords.size(); i-- > 0;) {
        coords[i] = {key & mask, n + 1};
        key >>= bits;
      }
      out.points.emplace_back(coords);
    }
  } else {
    auto seen = generic_node_points(n, d);
    out.points.assign(seen.begin(), seen.end());
    std::sort(out.points.begin(), out.points.end());
  }
  out.count = out.points.size();
  return out;
}

std::size_t node_count(int n, int d) {
  check_node_args(n, d);
  if (packable(n, d)) return packed_node_keys(n, d).size();
  return generic_node_points(n, d).size();
}

}  // namespace faber
