#pragma once

// Exact dyadic index arithmetic for hierarchical Faber-Schauder levels.
//
// A level vector j lives in {-1,0,1,...}^d. Its reduced order is
// |j|_1 := sum_i max(j_i, 0); the Smolyak truncation keeps all levels with
// reduced order <= n. Per axis, level -1 owns the two boundary translations
// {0,1}; level l >= 0 owns 2^l translations 0..2^l-1.
//
// Coordinates are kept as exact (numerator, level) pairs meaning
// numerator * 2^-level, so node sets and sample caches never depend on
// floating point identity.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace faber {

/// Largest admissible per-axis level; 2^level must fit in 64 bits.
inline constexpr int kMaxLevel = 62;

class LevelVector {
 public:
  LevelVector() = default;
  explicit LevelVector(std::vector<int> entries);
  LevelVector(std::initializer_list<int> entries);

  std::size_t dim() const noexcept { return entries_.size(); }
  int operator[](std::size_t axis) const { return entries_[axis]; }
  std::span<const int> entries() const noexcept { return entries_; }

  auto operator<=>(const LevelVector&) const = default;

 private:
  std::vector<int> entries_;
};

/// sum_i max(j_i, 0)
int reduced_order(const LevelVector& j) noexcept;

/// Number of axes with j_i != -1.
std::size_t active_axes(const LevelVector& j) noexcept;

/// Translations on one axis: 2 for level -1, 2^level otherwise.
std::uint64_t axis_translation_count(int level);

/// Product of axis_translation_count over all axes.
std::uint64_t translation_count(const LevelVector& j);

class TranslationVector {
 public:
  TranslationVector() = default;
  explicit TranslationVector(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}
  TranslationVector(std::initializer_list<std::uint64_t> entries) : entries_(entries) {}

  std::size_t dim() const noexcept { return entries_.size(); }
  std::uint64_t operator[](std::size_t axis) const { return entries_[axis]; }
  std::uint64_t& operator[](std::size_t axis) { return entries_[axis]; }
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }

  auto operator<=>(const TranslationVector&) const = default;

 private:
  std::vector<std::uint64_t> entries_;
};

/// Throws InvalidArgument unless k is a valid translation of level j.
void check_translation(const LevelVector& j, const TranslationVector& k);

/// Row-major position of k among the translations of j (last axis fastest).
std::uint64_t flat_index(const LevelVector& j, const TranslationVector& k);

/// Inverse of flat_index.
TranslationVector translation_at(const LevelVector& j, std::uint64_t index);

/// Every level with reduced order <= n in lexicographic order of the entries.
std::vector<LevelVector> levels_up_to(int n, int d);

/// Lexicographic range over the translation set of one level.
class TranslationRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = TranslationVector;
    using difference_type = std::ptrdiff_t;
    using pointer = const TranslationVector*;
    using reference = const TranslationVector&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& other) const { return position_ == other.position_; }

   private:
    friend class TranslationRange;
    iterator(const TranslationRange* range, std::uint64_t position);

    const TranslationRange* range_ = nullptr;
    std::uint64_t position_ = 0;
    TranslationVector current_;
  };

  explicit TranslationRange(LevelVector j);

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, size_); }
  std::uint64_t size() const noexcept { return size_; }

 private:
  LevelVector level_;
  std::vector<std::uint64_t> extents_;
  std::uint64_t size_ = 0;
};

inline TranslationRange translations(const LevelVector& j) { return TranslationRange(j); }

/// numerator * 2^-level on one axis.
struct DyadicCoord {
  std::uint64_t numerator = 0;
  int level = 0;

  /// Odd numerator, or one of (0,0) / (1,0).
  DyadicCoord canonical() const noexcept;
  double value() const noexcept;

  bool operator==(const DyadicCoord&) const = default;
};

/// Exactly represented point of [0,1]^d; coordinates are stored canonical.
class DyadicPoint {
 public:
  DyadicPoint() = default;
  explicit DyadicPoint(std::vector<DyadicCoord> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  const DyadicCoord& operator[](std::size_t axis) const { return coords_[axis]; }
  std::span<const DyadicCoord> coords() const noexcept { return coords_; }

  std::vector<double> to_doubles() const;
  void to_doubles(std::span<double> out) const;

  bool operator==(const DyadicPoint&) const = default;
  /// Orders by exact numeric value, axis by axis.
  bool operator<(const DyadicPoint& other) const;

 private:
  std::vector<DyadicCoord> coords_;
};

struct DyadicPointHash {
  std::size_t operator()(const DyadicPoint& x) const noexcept;
};

/// x_{j,k}: per axis k_i * 2^-max(j_i, 0).
DyadicPoint node(const LevelVector& j, const TranslationVector& k);

/// The 3^|e(j)| points of the mixed second-difference stencil at x_{j,k},
/// in tensor order (last axis fastest). Active axes contribute
/// {x, x + 2^-(j+1), x + 2^-j}; axes at level -1 contribute x alone.
std::vector<DyadicPoint> coeff_sample_points(const LevelVector& j, const TranslationVector& k);

struct NodeSet {
  std::vector<DyadicPoint> points;  // sorted, unique
  std::size_t count = 0;
};

/// Union of all coefficient stencils with reduced order <= n, deduplicated.
NodeSet node_set(int n, int d);

/// Size of node_set(n, d) without materializing the points.
std::size_t node_count(int n, int d);

}  // namespace faber
