#pragma once

// Convergence studies of I_n against the theoretical envelopes, rate fits,
// the hyperbolic-cross sum estimates, the non-compactness demonstration,
// sampling-width tables and cubature studies.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faber/measure.hpp"
#include "faber/seqnorm.hpp"
#include "faber/testbed.hpp"

namespace faber {

struct RateRecord {
  int n = 0;
  std::size_t m = 0;  // distinct nodes sampled by I_n
  double error = 0.0;
  double error_estimate = 0.0;
  double reference = 0.0;
  double q = 0.0;
  double p = 0.0;
  int d = 0;
};

struct RateFit {
  double slope = 0.0;  // per-level exponent of 2
  double intercept = 0.0;
  double residual_rms = 0.0;
  double fixed_log_exponent = 0.0;
  std::vector<int> excluded;  // n of records dropped as measurement noise
};

enum class MeasureKind { composite, stratified_mc, sup_grid };

/// How a study measures the error at budget n.
struct MeasurePlan {
  MeasureKind kind = MeasureKind::composite;
  int order = kDefaultGaussOrder;
  std::optional<int> mesh_level;  // default max(n + kDefaultMeshOffset, min_mesh_level)
  /// Finest mesh the integrand needs, e.g. J + 1 for a Faber sum of depth J
  /// so that all of its creases lie on mesh lines.
  int min_mesh_level = 0;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;

  MeasureSpec resolve(int n, double q) const;
};

/// Theoretical log exponent: d-1 when q <= p, (d-1)/q when p < q.
double log_exponent(double p, double q, int d);

/// 2^{-n/p} n^{d-1} (q <= p) or 2^{-n/q} n^{(d-1)/q} (p < q), with n^x at
/// n = 0 taken as 1.
double reference_envelope(int n, double p, double q, int d);

std::vector<RateRecord> convergence_study(const FunctionHandle& f, double p, double q, int d,
                                          std::span<const int> ns, const MeasurePlan& plan);

/// Least squares of log2(error) - e * log2(max(n,1)) against n. Records
/// whose error is not above 10x their error estimate are excluded.
RateFit fit_rate(std::span<const RateRecord> records, double fixed_log_exponent);

struct CombRow {
  int n = 0;
  double ratio_tail = 0.0;  // sum_{|j|_1 > n} 2^{-a|j|_1} / (n^{d-1} 2^{-an})
  double ratio_bulk = 0.0;  // sum_{|j|_1 <= n} 2^{|j|_1} / (n^{d-1} 2^n)
};

/// Sums over j in N_0^d by enumerating the first d-1 axes and closing the
/// last axis as a geometric series.
std::vector<CombRow> comb_check(double alpha, int d, std::span<const int> ns);

struct NoncompactReport {
  int max_level = 0;
  /// distance[j][l] = |v_{j,0}(w) - v_{l,0}(w)| at w = 2^{-min(j,l)-1}.
  std::vector<std::vector<double>> distance;
  std::vector<double> witness;  // witness[j] = 2^{-j-1}
  std::vector<std::vector<ProfileEntry>> profiles;  // p = 1, budget max_level
  std::vector<double> sequence_norms;  // s^{1/p}_{p,inf} b, p = 1
  bool unit_distances = false;
  bool single_spikes = false;
  std::string conclusion;
};

NoncompactReport noncompact_demo(int max_level);

struct WidthRow {
  std::size_t m = 0;
  double error = 0.0;
  double upper_ref = 0.0;  // m^{-1/p} (log^{d-1} m)^{1/p+1}, or m^{-1/q} (log^{d-1} m)^{2/q} for p < q
  double lower_ref = 0.0;  // m^{-1/q}
};

struct WidthTable {
  std::vector<WidthRow> rows;
  /// Least-squares slope of log2(error) against log2(m), when >= 2 rows.
  std::optional<double> loglog_slope;
};

WidthTable sampling_width_table(const FunctionHandle& f, double p, double q, int d,
                                std::span<const int> ns, const MeasurePlan& plan);

struct CubatureRow {
  int n = 0;
  std::size_t m = 0;
  double abs_error = 0.0;
  double reference = 0.0;  // 2^{-n} n^{d-1}
};

/// |integral - integrate(analyze(f, n))|; f must carry its exact integral.
std::vector<CubatureRow> cubature_study(const TestFunction& f, std::span<const int> ns);

}  // namespace faber
