#include "faber/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "faber/basis.hpp"
#include "faber/error.hpp"

namespace faber {

namespace {

double positive_power(int n, double exponent) {
  return std::pow(static_cast<double>(std::max(n, 1)), exponent);
}

void check_ns(std::span<const int> ns) {
  if (ns.empty()) throw InvalidArgument("range of n must not be empty");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 0) throw InvalidArgument("n must be non-negative");
    if (i > 0 && ns[i] <= ns[i - 1]) throw InvalidArgument("range of n must be ascending");
  }
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("rate fit needs at least two distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / count);
  return fit;
}

// All tuples in N_0^{axes} with coordinate sum <= limit, grouped by sum:
// counts[s] = number of tuples with sum s.
std::vector<double> tuples_by_sum(int axes, int limit) {
  std::vector<double> counts(static_cast<std::size_t>(limit) + 1, 0.0);
  counts[0] = 1.0;
  for (int a = 0; a < axes; ++a) {
    std::vector<double> next(counts.size(), 0.0);
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (counts[s] == 0.0) continue;
      for (std::size_t t = s; t < counts.size(); ++t) next[t] += counts[s];
    }
    counts = std::move(next);
  }
  return counts;
}

}  // namespace

MeasureSpec MeasurePlan::resolve(int n, double q) const {
  MeasureSpec spec;
  spec.q = q;
  const int level = mesh_level.value_or(std::max(n + kDefaultMeshOffset, min_mesh_level));
  switch (kind) {
    case MeasureKind::composite:
      spec.method = CompositeGauss{order, level};
      break;
    case MeasureKind::stratified_mc:
      spec.method = StratifiedMc{samples, seed};
      break;
    case MeasureKind::sup_grid:
      spec.method = SupGrid{level};
      break;
  }
  return spec;
}

double log_exponent(double p, double q, int d) {
  return p < q ? (d - 1) / q : static_cast<double>(d - 1);
}

double reference_envelope(int n, double p, double q, int d) {
  const double rate = p < q ? q : p;
  return std::exp2(-n / rate) * positive_power(n, log_exponent(p, q, d));
}

std::vector<RateRecord> convergence_study(const FunctionHandle& f, double p, double q, int d,
                                          std::span<const int> ns, const MeasurePlan& plan) {
  check_ns(ns);
  if (f.dim() != static_cast<std::size_t>(d)) throw InvalidArgument("function dimension is not d");
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("p must lie in [1,inf)");
  std::vector<RateRecord> records;
  records.reserve(ns.size());
  for (int n : ns) {
    SampleCache cache(f);
    const FaberSeries s = analyze(cache, n);
    const Measurement e = lq_error(f, s, plan.resolve(n, q));
    records.push_back({n, cache.size(), e.value, e.error_estimate,
                       reference_envelope(n, p, q, d), q, p, d});
  }
  return records;
}

RateFit fit_rate(std::span<const RateRecord> records, double fixed_log_exponent) {
  RateFit fit;
  fit.fixed_log_exponent = fixed_log_exponent;
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (!(r.error > 0.0) || !(r.error > 10.0 * r.error_estimate)) {
      fit.excluded.push_back(r.n);
      continue;
    }
    xs.push_back(r.n);
    ys.push_back(std::log2(r.error) - fixed_log_exponent * std::log2(std::max(r.n, 1)));
  }
  if (xs.size() < 4) {
    throw InvalidArgument("rate fit needs at least 4 usable records, got " +
                          std::to_string(xs.size()));
  }
  const LineFit line = least_squares(xs, ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.residual_rms = line.residual_rms;
  return fit;
}

std::vector<CombRow> comb_check(double alpha, int d, std::span<const int> ns) {
  if (!(alpha > 0.0) || std::isinf(alpha)) throw InvalidArgument("alpha must be positive");
  if (d <= 0) throw InvalidArgument("dimension must be positive");
  check_ns(ns);
  const double ratio = std::exp2(-alpha);
  std::vector<CombRow> rows;
  for (int n : ns) {
    // Prefix sums beyond n + cutoff contribute below double resolution.
    const int cutoff = n + static_cast<int>(std::ceil(64.0 / alpha)) + 8 * d;
    const auto counts = tuples_by_sum(d - 1, cutoff);
    double tail = 0.0;
    for (int s = 0; s <= cutoff; ++s) {
      const double c = counts[static_cast<std::size_t>(s)];
      // Last axis runs over j_d > n - s (all j_d >= 0 once s > n).
      const int first = std::max(n - s + 1, 0);
      tail += c * std::exp2(-alpha * (s + first)) / (1.0 - ratio);
    }
    double bulk = 0.0;
    for (int s = 0; s <= n; ++s) {
      const double c = counts[static_cast<std::size_t>(s)];
      bulk += c * std::exp2(s) * (std::exp2(n - s + 1) - 1.0);
    }
    const double poly = positive_power(n, d - 1);
    rows.push_back({n, tail / (poly * std::exp2(-alpha * n)), bulk / (poly * std::exp2(n))});
  }
  return rows;
}

NoncompactReport noncompact_demo(int max_level) {
  if (max_level < 2) throw InvalidArgument("non-compactness demo needs max_level >= 2");
  NoncompactReport report;
  report.max_level = max_level;
  const auto count = static_cast<std::size_t>(max_level) + 1;
  report.distance.assign(count, std::vector<double>(count, 0.0));
  report.witness.resize(count);
  for (std::size_t j = 0; j < count; ++j) report.witness[j] = std::ldexp(1.0, -static_cast<int>(j) - 1);

  report.unit_distances = true;
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t l = 0; l < count; ++l) {
      const double w = report.witness[std::min(j, l)];
      const double dist = std::abs(hat_eval(static_cast<int>(j), 0, w) - hat_eval(static_cast<int>(l), 0, w));
      report.distance[j][l] = dist;
      if (j != l && dist != 1.0) report.unit_distances = false;
      if (j == l && dist != 0.0) report.unit_distances = false;
    }
  }

  report.single_spikes = true;
  for (std::size_t j = 0; j < count; ++j) {
    const auto hat = hat_family(static_cast<int>(j), 1);
    const FaberSeries s = analyze(hat.handle, max_level);
    auto profile = decay_profile(s, 1.0);
    for (const auto& entry : profile) {
      const bool spike = entry.order == static_cast<int>(j);
      if (spike ? entry.value != 1.0 : entry.value > 1e-12) report.single_spikes = false;
    }
    report.profiles.push_back(std::move(profile));
    report.sequence_norms.push_back(seq_norm(s, NormParams::limiting(1.0, INFINITY)));
  }

  std::ostringstream msg;
  msg << "hat functions v_{j,0}, j = 0.." << max_level << ": sequence norm s^1_{1,inf}b "
      << (report.single_spikes ? "equals 1 for every member" : "is NOT uniformly 1")
      << "; pairwise sup-distance "
      << (report.unit_distances ? "is 1 for every pair" : "is NOT 1 for every pair")
      << (report.unit_distances && report.single_spikes
              ? ". The family is bounded in the sequence norm but has no L_inf-convergent "
                "subsequence, so the unit ball is not compact in L_inf."
              : ".");
  report.conclusion = msg.str();
  return report;
}

WidthTable sampling_width_table(const FunctionHandle& f, double p, double q, int d,
                                std::span<const int> ns, const MeasurePlan& plan) {
  const auto records = convergence_study(f, p, q, d, ns, plan);
  WidthTable table;
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    const double m = static_cast<double>(r.m);
    const double log_term = std::pow(std::log2(m), d - 1);
    WidthRow row;
    row.m = r.m;
    row.error = r.error;
    row.upper_ref = p < q ? std::pow(m, -1.0 / q) * std::pow(log_term, 2.0 / q)
                          : std::pow(m, -1.0 / p) * std::pow(log_term, 1.0 / p + 1.0);
    row.lower_ref = std::pow(m, -1.0 / q);
    table.rows.push_back(row);
    if (r.error > 0.0) {
      xs.push_back(std::log2(m));
      ys.push_back(std::log2(r.error));
    }
  }
  if (xs.size() >= 2) table.loglog_slope = least_squares(xs, ys).slope;
  return table;
}

std::vector<CubatureRow> cubature_study(const TestFunction& f, std::span<const int> ns) {
  check_ns(ns);
  if (!f.integral) throw InvalidArgument("cubature study needs a function with exact integral");
  const int d = static_cast<int>(f.handle.dim());
  std::vector<CubatureRow> rows;
  for (int n : ns) {
    SampleCache cache(f.handle);
    const double approx = integrate(analyze(cache, n));
    rows.push_back({n, cache.size(), std::abs(*f.integral - approx),
                    std::exp2(-n) * positive_power(n, d - 1)});
  }
  return rows;
}

}  // namespace faber
