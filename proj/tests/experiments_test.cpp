#include "faber/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "faber/error.hpp"
#include "faber/parallel.hpp"
#include "faber/testbed.hpp"
#include "oracles.hpp"

namespace faber {
namespace {

std::vector<RateRecord> synthetic(double (*error)(int)) {
  std::vector<RateRecord> records;
  for (int n = 2; n <= 12; ++n) {
    RateRecord r;
    r.n = n;
    r.error = error(n);
    records.push_back(r);
  }
  return records;
}

TEST(FitRate, RecoversPlantedExponents) {
  const auto half = fit_rate(synthetic([](int n) { return std::exp2(-n / 2.0); }), 0.0);
  EXPECT_NEAR(half.slope, -0.5, 1e-12);
  EXPECT_NEAR(half.residual_rms, 0.0, 1e-12);
  const auto with_log = fit_rate(synthetic([](int n) { return n * std::exp2(-n); }), 1.0);
  EXPECT_NEAR(with_log.slope, -1.0, 1e-12);
  EXPECT_EQ(with_log.fixed_log_exponent, 1.0);
}

TEST(FitRate, ExcludesNoiseDominatedRecords) {
  auto records = synthetic([](int n) { return std::exp2(-n); });
  records[0].error_estimate = records[0].error;
  const auto fit = fit_rate(records, 0.0);
  EXPECT_EQ(fit.excluded, std::vector<int>{2});
  EXPECT_NEAR(fit.slope, -1.0, 1e-12);
}

TEST(FitRate, NeedsFourUsableRecords) {
  auto records = synthetic([](int n) { return std::exp2(-n); });
  records.resize(3);
  EXPECT_THROW(fit_rate(records, 0.0), InvalidArgument);
}

TEST(ReferenceEnvelope, Branches) {
  EXPECT_DOUBLE_EQ(reference_envelope(4, 2.0, 2.0, 2), 0.25 * 4.0);
  EXPECT_DOUBLE_EQ(reference_envelope(0, 2.0, 2.0, 3), 1.0);
  EXPECT_DOUBLE_EQ(reference_envelope(4, 1.0, 2.0, 3), 0.25 * 4.0);
  EXPECT_EQ(log_exponent(2.0, 2.0, 3), 2.0);
  EXPECT_EQ(log_exponent(1.0, 4.0, 3), 0.5);
}

TEST(ConvergenceStudy, MultilinearDegenerates) {
  const auto f = smooth("multilinear", 2).handle;
  const int ns[] = {0, 1, 2, 3};
  MeasurePlan plan;
  plan.kind = MeasureKind::composite;
  for (const auto& r : convergence_study(f, 2.0, 2.0, 2, ns, plan)) {
    EXPECT_LE(r.error, 1e-10);
    EXPECT_EQ(r.m, node_count(r.n, 2));
    EXPECT_GT(r.reference, 0.0);
  }
}

TEST(ConvergenceStudy, ExtremalTracksEnvelope) {
  const auto f = extremal(2.0, 14, 7, 1);
  const int ns[] = {4, 5, 6, 7, 8, 9, 10, 11, 12};
  MeasurePlan plan;
  plan.min_mesh_level = 15;
  const auto records = convergence_study(f.handle, 2.0, 2.0, 1, ns, plan);
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : records) {
    EXPECT_EQ(r.m, node_count(r.n, 1));
    lo = std::min(lo, r.error / r.reference);
    hi = std::max(hi, r.error / r.reference);
  }
  EXPECT_LE(hi / lo, 2.0);
  const auto fit = fit_rate(records, 0.0);
  EXPECT_GE(fit.slope, -0.6);
  EXPECT_LE(fit.slope, -0.4);
}

TEST(ConvergenceStudy, DeterministicAcrossThreadCounts) {
  const auto f = smooth("exp", 2).handle;
  const int ns[] = {2, 4};
  MeasurePlan plan;
  plan.kind = MeasureKind::stratified_mc;
  plan.samples = 5000;
  set_worker_count(1);
  const auto a = convergence_study(f, 2.0, 2.0, 2, ns, plan);
  set_worker_count(3);
  const auto b = convergence_study(f, 2.0, 2.0, 2, ns, plan);
  set_worker_count(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].error, b[i].error);
    EXPECT_EQ(a[i].error_estimate, b[i].error_estimate);
  }
}

TEST(CombCheck, UnivariateClosedForms) {
  const int ns[] = {0, 3, 10};
  for (const auto& r : comb_check(1.0, 1, ns)) {
    EXPECT_NEAR(r.ratio_tail, 1.0, 1e-12);
    EXPECT_NEAR(r.ratio_bulk, (std::exp2(r.n + 1) - 1) / std::exp2(r.n), 1e-12);
  }
}

TEST(CombCheck, MatchesBinomialOracle) {
  const int ns[] = {5, 8, 12};
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int d = 1; d <= 3; ++d) {
      const auto rows = comb_check(alpha, d, ns);
      for (const auto& r : rows) {
        const double scale = std::pow(std::max(r.n, 1), d - 1);
        const double tail = oracle::comb_tail(alpha, d, r.n, r.n + 600) / (scale * std::exp2(-alpha * r.n));
        const double bulk = oracle::comb_bulk(d, r.n) / (scale * std::exp2(r.n));
        EXPECT_NEAR(r.ratio_tail, tail, 1e-10 * tail) << alpha << " " << d << " " << r.n;
        EXPECT_NEAR(r.ratio_bulk, bulk, 1e-12 * bulk);
      }
    }
  }
}

TEST(CombCheck, TwoDimensionalTailBand) {
  std::vector<int> ns;
  for (int n = 10; n <= 20; ++n) ns.push_back(n);
  const auto rows = comb_check(1.0, 2, ns);
  ASSERT_EQ(rows.size(), 11u);
  const double first = rows.front().ratio_tail;
  for (const auto& r : rows) {
    EXPECT_GE(r.ratio_tail, 0.5);
    EXPECT_LE(r.ratio_tail, 4.0);
    EXPECT_NEAR(r.ratio_tail, first, 0.2 * first);
  }
  EXPECT_THROW(comb_check(0.0, 2, ns), InvalidArgument);
}

TEST(NoncompactDemo, Report) {
  const auto report = noncompact_demo(8);
  EXPECT_TRUE(report.unit_distances);
  EXPECT_TRUE(report.single_spikes);
  for (std::size_t j = 0; j <= 8; ++j) {
    EXPECT_EQ(report.distance[j][j], 0.0);
    EXPECT_EQ(report.sequence_norms[j], 1.0);
    for (std::size_t l = 0; l <= 8; ++l) {
      if (j != l) EXPECT_EQ(report.distance[j][l], 1.0);
    }
  }
  EXPECT_NE(report.conclusion.find("not compact"), std::string::npos);
  EXPECT_THROW(noncompact_demo(1), InvalidArgument);
}

TEST(SamplingWidthTable, IncreasingNodeCountsAndSlope) {
  const auto f = extremal(2.0, 12, 7, 1);
  const int ns[] = {4, 5, 6, 7, 8, 9, 10};
  MeasurePlan plan;
  plan.min_mesh_level = 13;
  const auto table = sampling_width_table(f.handle, 2.0, 2.0, 1, ns, plan);
  for (std::size_t i = 1; i < table.rows.size(); ++i) EXPECT_GT(table.rows[i].m, table.rows[i - 1].m);
  for (const auto& r : table.rows) {
    EXPECT_GT(r.upper_ref, 0.0);
    EXPECT_DOUBLE_EQ(r.lower_ref, 1.0 / std::sqrt(static_cast<double>(r.m)));
  }
  ASSERT_TRUE(table.loglog_slope.has_value());
  EXPECT_GE(*table.loglog_slope, -0.6);
  EXPECT_LE(*table.loglog_slope, -0.4);
}

TEST(CubatureStudy, ConstantsAreExact) {
  const int ns[] = {0, 2, 5};
  for (const auto& r : cubature_study(smooth("const", 3), ns)) EXPECT_EQ(r.abs_error, 0.0);
}

TEST(CubatureStudy, SquareProductDecreases) {
  const int ns[] = {4, 6, 8, 10};
  const auto rows = cubature_study(smooth("x2", 2), ns);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].abs_error, rows[i - 1].abs_error);
  EXPECT_LE(rows.back().abs_error, 1e-4);
}

TEST(CubatureStudy, SquareProductPlateau) {
  // Exact rational evaluation of sum_{|j|_1 <= n} delta_a delta_b with
  // delta_{-1} = 1/2, delta_j = -2^{-2j-3} gives |error| = 4.238552517361111e-07
  // at both n = 6 and n = 7.
  const int ns[] = {6, 7};
  const auto rows = cubature_study(smooth("x2", 2), ns);
  EXPECT_NEAR(rows[0].abs_error, 4.238552517361111e-07, 1e-17);
  EXPECT_NEAR(rows[1].abs_error, rows[0].abs_error, 1e-17);
}

TEST(CubatureStudy, KinkIsSecondOrderInOneDimension) {
  std::vector<int> ns;
  for (int n = 2; n <= 14; ++n) ns.push_back(n);
  const auto rows = cubature_study(kink(default_kink_anchor(1)), ns);
  for (const auto& r : rows) EXPECT_LE(r.abs_error * std::exp2(2 * r.n), 1.0) << r.n;
}

TEST(CubatureStudy, RequiresExactIntegral) {
  TestFunction f;
  f.handle = FunctionHandle(1, [](std::span<const double> x) { return x[0]; });
  const int ns[] = {1};
  EXPECT_THROW(cubature_study(f, ns), InvalidArgument);
}

}  // namespace
}  // namespace faber
