#include "faber/function.hpp"

#include <cmath>
#include <sstream>

#include "faber/error.hpp"
#include "faber/util.hpp"

namespace faber {

FunctionHandle::FunctionHandle(std::size_t dim, Evaluator evaluator, std::string label)
    : dim_(dim), label_(std::move(label)), state_(std::make_shared<State>()) {
  if (dim_ == 0) throw InvalidArgument("function dimension must be positive");
  if (!evaluator) throw InvalidArgument("function handle needs an evaluator");
  state_->evaluate = std::move(evaluator);
}

double FunctionHandle::operator()(std::span<const double> x) const {
  if (!state_) throw InvalidArgument("evaluating an empty function handle");
  if (x.size() != dim_) throw InvalidArgument("point dimension does not match the function");
  state_->count.fetch_add(1, std::memory_order_relaxed);
  return state_->evaluate(x);
}

double FunctionHandle::operator()(const DyadicPoint& x) const {
  std::array<double, 16> small{};
  if (x.dim() <= small.size()) {
    std::span<double> buf(small.data(), x.dim());
    x.to_doubles(buf);
    return (*this)(std::span<const double>(buf));
  }
  const auto coords = x.to_doubles();
  return (*this)(std::span<const double>(coords));
}

std::uint64_t FunctionHandle::eval_count() const noexcept {
  return state_ ? state_->count.load(std::memory_order_relaxed) : 0;
}

void FunctionHandle::reset_count() const noexcept {
  if (state_) state_->count.store(0, std::memory_order_relaxed);
}

FunctionHandle linear_combination(double alpha, const FunctionHandle& f, double beta,
                                  const FunctionHandle& g) {
  if (f.dim() != g.dim()) throw InvalidArgument("combining functions of different dimension");
  return FunctionHandle(
      f.dim(), [=](std::span<const double> x) { return alpha * f(x) + beta * g(x); },
      "lincomb(" + f.label() + "," + g.label() + ")");
}

SampleCache::SampleCache(FunctionHandle f)
    : f_(std::move(f)), shards_(std::make_unique<std::array<Shard, kShards>>()) {
  if (!f_.valid()) throw InvalidArgument("sample cache needs a function");
}

double SampleCache::value(const DyadicPoint& x) {
  auto& shard = (*shards_)[DyadicPointHash{}(x) % kShards];
  std::lock_guard lock(shard.mutex);
  if (auto it = shard.values.find(x); it != shard.values.end()) return it->second;
  const double v = f_(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "non-finite value " << v << " of '" << f_.label() << "' at (";
    for (std::size_t i = 0; i < x.dim(); ++i) {
      msg << (i ? ", " : "") << format_double(x[i].value());
    }
    msg << ")";
    throw EvaluationError(msg.str());
  }
  shard.values.emplace(x, v);
  return v;
}

std::size_t SampleCache::size() const {
  std::size_t total = 0;
  for (const auto& shard : *shards_) {
    std::lock_guard lock(shard.mutex);
    total += shard.values.size();
  }
  return total;
}

}  // namespace faber
