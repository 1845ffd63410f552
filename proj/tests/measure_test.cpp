#include "faber/measure.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "faber/error.hpp"
#include "faber/parallel.hpp"
#include "faber/testbed.hpp"
#include "support.hpp"

namespace faber {
namespace {

constexpr double kInf = INFINITY;

FunctionHandle constant(std::size_t d, double c) {
  return FunctionHandle(d, [c](std::span<const double>) { return c; });
}

FunctionHandle tent_1d() { return hat_family(0, 1).handle; }

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int order = 2; order <= 12; ++order) {
    const auto [nodes, weights] = gauss_legendre(order);
    for (int degree = 0; degree < 2 * order; ++degree) {
      double sum = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * std::pow(nodes[i], degree);
      EXPECT_NEAR(sum, 1.0 / (degree + 1), 1e-14) << "order " << order << " degree " << degree;
    }
  }
}

TEST(LqNorm, ConstantAllMethods) {
  for (double q : {1.0, 2.0, 3.5}) {
    const auto c = lq_norm(constant(2, -1.5), MeasureSpec{q, CompositeGauss{3, 2}});
    EXPECT_NEAR(c.value, 1.5, 1e-14);
    EXPECT_EQ(c.error_estimate, 0.0);
    const auto mc = lq_norm(constant(2, -1.5), MeasureSpec{q, StratifiedMc{5000, 1}});
    EXPECT_NEAR(mc.value, 1.5, 1e-14);
  }
  EXPECT_EQ(lq_norm(constant(3, 2.0), MeasureSpec{kInf, SupGrid{3}}).value, 2.0);
}

TEST(LqNorm, TentNorms) {
  const auto two = lq_norm(tent_1d(), MeasureSpec{2.0, CompositeGauss{5, 1}});
  EXPECT_NEAR(two.value, std::sqrt(1.0 / 3.0), 1e-12);
  const auto one = lq_norm(tent_1d(), MeasureSpec{1.0, CompositeGauss{5, 1}});
  EXPECT_NEAR(one.value, 0.5, 1e-12);
  EXPECT_EQ(lq_norm(tent_1d(), MeasureSpec{kInf, SupGrid{1}}).value, 1.0);
}

TEST(LqNorm, MonteCarloTracksCompositeWithinErrorBars) {
  for (int d = 1; d <= 2; ++d) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto g = synthesize(testing::random_series(3, d, seed + 40));
      const auto exact = lq_norm(g, MeasureSpec{2.0, CompositeGauss{5, 6}});
      const auto mc = lq_norm(g, MeasureSpec{2.0, StratifiedMc{20000, seed}});
      EXPECT_GT(mc.error_estimate, 0.0);
      EXPECT_LE(std::abs(mc.value - exact.value), 3.0 * (mc.error_estimate + exact.error_estimate))
          << "d=" << d << " seed=" << seed;
    }
  }
}

TEST(LqNorm, MonotoneInQ) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = synthesize(testing::random_series(3, 2, seed));
    double previous = 0.0;
    for (double q : {1.0, 2.0, 4.0}) {
      const double v = lq_norm(g, MeasureSpec{q, CompositeGauss{5, 5}}).value;
      EXPECT_GE(v, previous - 1e-12);
      previous = v;
    }
  }
}

TEST(LqNorm, MonteCarloIndependentOfThreadCount) {
  const auto g = smooth("exp", 3).handle;
  const MeasureSpec spec{2.0, StratifiedMc{30000, 9}};
  set_worker_count(1);
  const auto serial = lq_norm(g, spec);
  set_worker_count(4);
  const auto parallel = lq_norm(g, spec);
  set_worker_count(0);
  EXPECT_EQ(serial.value, parallel.value);
  EXPECT_EQ(serial.error_estimate, parallel.error_estimate);
}

TEST(LqNorm, CompositeIndependentOfThreadCount) {
  const auto g = smooth("poly-mix", 2).handle;
  const MeasureSpec spec{3.0, CompositeGauss{4, 5}};
  set_worker_count(1);
  const auto serial = lq_norm(g, spec);
  set_worker_count(3);
  const auto parallel = lq_norm(g, spec);
  set_worker_count(0);
  EXPECT_EQ(serial.value, parallel.value);
}

TEST(MeasureSpec, Validation) {
  EXPECT_THROW(MeasureSpec({0.5, CompositeGauss{}}).validate(), InvalidArgument);
  EXPECT_THROW(MeasureSpec({2.0, CompositeGauss{1, 3}}).validate(), InvalidArgument);
  EXPECT_THROW(MeasureSpec({2.0, CompositeGauss{5, 0}}).validate(), InvalidArgument);
  EXPECT_THROW(MeasureSpec({2.0, StratifiedMc{999, 0}}).validate(), InvalidArgument);
  EXPECT_THROW(MeasureSpec({kInf, CompositeGauss{}}).validate(), InvalidArgument);
  EXPECT_THROW(MeasureSpec({2.0, SupGrid{3}}).validate(), InvalidArgument);
  EXPECT_NO_THROW(MeasureSpec({kInf, SupGrid{3}}).validate());
}

TEST(MeasureSpec, CompositeLimits) {
  EXPECT_THROW(lq_norm(smooth("x2", 4).handle, MeasureSpec{2.0, CompositeGauss{2, 1}}), InvalidArgument);
  try {
    lq_norm(smooth("x2", 3).handle, MeasureSpec{2.0, CompositeGauss{2, 12}});
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("stratified_mc"), std::string::npos) << e.what();
  }
}

TEST(LqError, MultilinearIsReproduced) {
  const auto f = smooth("multilinear", 2).handle;
  for (int n = 0; n <= 3; ++n) {
    EXPECT_LE(lq_error(f, analyze(f, n), MeasureSpec{2.0, CompositeGauss{5, 4}}).value, 1e-10);
  }
}

TEST(LqError, SingleLevelTailMatchesBlockNorm) {
  const int n = 4;
  FaberSeries tail(n + 1, 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const LevelVector j{n + 1};
  for (double& c : tail.coefficients(j)) c = unit(rng);
  const auto f = synthesize(tail);
  const auto err = lq_error(f, analyze(f, n), MeasureSpec{2.0, CompositeGauss{5, n + 2}});
  const double block = block_lq_exact(j, tail.coefficients(j), 2.0);
  EXPECT_NEAR(err.value * err.value, block * block, 1e-12);
}

TEST(LqError, SquareConvergesAtSecondOrder) {
  const FunctionHandle f(1, [](std::span<const double> x) { return x[0] * x[0]; });
  double previous = 0.0;
  for (int n = 2; n <= 9; ++n) {
    const double e = lq_error(f, analyze(f, n), MeasureSpec{2.0, CompositeGauss{5, n + 2}}).value;
    if (n >= 6) EXPECT_NEAR(previous / e, 4.0, 0.05) << n;
    previous = e;
  }
}

TEST(BlockLqExact, Values) {
  const double one[] = {1.0};
  EXPECT_DOUBLE_EQ(block_lq_exact(LevelVector{0}, one, 1.0), 0.5);
  const double two[] = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(block_lq_exact(LevelVector{1}, two, 2.0), std::sqrt(1.0 / 3.0));
  const double zeros[] = {0.0, 0.0};
  EXPECT_EQ(block_lq_exact(LevelVector{1}, zeros, 3.0), 0.0);
  EXPECT_THROW(block_lq_exact(LevelVector{-1}, two, 2.0), InvalidArgument);
}

TEST(BlockLqExact, MatchesCompositeOnSyntheticLevels) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const LevelVector& j : {LevelVector{3}, LevelVector{2, 1}, LevelVector{0, 3}}) {
    FaberSeries s(reduced_order(j), static_cast<int>(j.dim()));
    for (double& c : s.coefficients(j)) c = unit(rng);
    int finest = 0;
    for (int e : j.entries()) finest = std::max(finest, e);
    for (double q : {1.0, 2.0, 3.0}) {
      const double exact = block_lq_exact(j, s.coefficients(j), q);
      const double measured = lq_norm(synthesize(s), MeasureSpec{q, CompositeGauss{5, finest + 1}}).value;
      EXPECT_NEAR(measured, exact, 1e-10 * exact);
    }
  }
}

}  // namespace
}  // namespace faber
