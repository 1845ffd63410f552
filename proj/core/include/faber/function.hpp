#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>

#include "faber/dyadic.hpp"

namespace faber {

/// Deterministic black-box evaluator [0,1]^d -> R with an evaluation counter.
///
/// Copies share the counter, so the information cost of an algorithm can be
/// read off any copy of the handle it was given.
class FunctionHandle {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  FunctionHandle() = default;
  FunctionHandle(std::size_t dim, Evaluator evaluator, std::string label = {});

  std::size_t dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }
  bool valid() const noexcept { return static_cast<bool>(state_); }

  double operator()(std::span<const double> x) const;
  double operator()(const DyadicPoint& x) const;

  std::uint64_t eval_count() const noexcept;
  void reset_count() const noexcept;

 private:
  struct State {
    Evaluator evaluate;
    std::atomic<std::uint64_t> count{0};
  };
  std::size_t dim_ = 0;
  std::string label_;
  std::shared_ptr<State> state_;
};

/// x -> alpha f(x) + beta g(x); evaluating it evaluates both operands.
FunctionHandle linear_combination(double alpha, const FunctionHandle& f, double beta,
                                  const FunctionHandle& g);

/// Samples of f keyed by exact node, evaluated at most once per node.
///
/// Safe for concurrent use: lookups are sharded and the evaluation of a
/// missing node happens under its shard lock, so every reader sees a single
/// value per node.
class SampleCache {
 public:
  explicit SampleCache(FunctionHandle f);

  /// f(x); throws EvaluationError if the value is not finite.
  double value(const DyadicPoint& x);

  std::size_t size() const;
  const FunctionHandle& function() const noexcept { return f_; }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<DyadicPoint, double, DyadicPointHash> values;
  };

  FunctionHandle f_;
  std::unique_ptr<std::array<Shard, kShards>> shards_;
};

}  // namespace faber
