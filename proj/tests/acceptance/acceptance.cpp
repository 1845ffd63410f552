// Acceptance suite: one line per criterion, "PASS" or "FAIL", with the
// measured figures and the wall time against the time budget. Exit status is
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "faber/dyadic.hpp"
#include "faber/experiments.hpp"
#include "faber/measure.hpp"
#include "faber/seqnorm.hpp"
#include "faber/series.hpp"
#include "faber/testbed.hpp"
#include "support.hpp"

namespace {

using namespace faber;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::vector<int> range(int first, int last) {
  std::vector<int> ns;
  for (int n = first; n <= last; ++n) ns.push_back(n);
  return ns;
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

Outcome biorthogonality() {
  double worst = 0.0;
  int cases = 0;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 6; ++n) {
      for (std::uint64_t r = 0; r < 20; ++r) {
        const auto c = testing::random_series(n, d, 1000 * d + 20 * n + r);
        worst = std::max(worst, max_abs_difference(analyze(synthesize(c), n), c));
        ++cases;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " series, max deviation " + fmt(worst)};
}

Outcome interpolation() {
  double worst = 0.0;
  for (const char* id : {"const", "multilinear", "x2", "exp", "poly-mix"}) {
    for (int d = 1; d <= 2; ++d) {
      const auto f = smooth(id, d).handle;
      for (int n = 0; n <= 6; ++n) {
        const auto s = analyze(f, n);
        for (const auto& p : node_set(n, d).points) {
          const auto x = p.to_doubles();
          worst = std::max(worst, std::abs(evaluate(s, x) - f(x)));
        }
      }
    }
  }
  return {worst <= 1e-10, "max |I_n f - f| on nodes " + fmt(worst)};
}

Outcome node_accounting() {
  bool univariate = true;
  for (int n = 0; n <= 12; ++n) {
    univariate = univariate && node_count(n, 1) == (std::size_t{1} << (n + 1)) + 1;
  }
  // Regression values of m(n,d) for n = 6..12, from the per-axis level
  // count with sum (lambda_i - 1)_+ <= n.
  const std::vector<std::size_t> frozen2 = {1281, 2817, 6145, 13313, 28673, 61441, 131073};
  const std::vector<std::size_t> frozen3 = {8961, 21249, 49665, 114689, 262145, 593921, 1335297};
  constexpr double kFrozenMin = 2.2639;  // d = 3, n = 12
  constexpr double kFrozenMax = 3.8893;  // d = 3, n = 6
  bool counts = true;
  double lo = INFINITY, hi = 0.0;
  for (int d = 2; d <= 3; ++d) {
    for (int n = 6; n <= 12; ++n) {
      const std::size_t m = node_count(n, d);
      counts = counts && m == (d == 2 ? frozen2 : frozen3)[static_cast<std::size_t>(n - 6)];
      const double ratio = static_cast<double>(m) / (std::exp2(n) * std::pow(n, d - 1));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  const bool band = lo >= 0.3 && hi <= 10.0;
  const bool frozen = std::abs(lo - kFrozenMin) < 1e-4 && std::abs(hi - kFrozenMax) < 1e-4;
  return {univariate && counts && band && frozen,
          std::string("m(n,1) = 2^(n+1)+1 ") + (univariate ? "holds" : "FAILS") + ", ratio band [" +
              fmt(lo, 5) + ", " + fmt(hi, 5) + "], frozen counts " + (counts ? "match" : "DIFFER")};
}

MeasurePlan composite_plan(int depth) {
  MeasurePlan plan;
  plan.kind = MeasureKind::composite;
  plan.min_mesh_level = depth + 1;
  return plan;
}

double univariate_slope(double p, double q) {
  const int depth = 14;
  const auto f = extremal(p, depth, 7, 1);
  const auto ns = range(4, 12);
  const auto records = convergence_study(f.handle, p, q, 1, ns, composite_plan(depth));
  return fit_rate(records, 0.0).slope;
}

Outcome rate_q_equals_p() {
  const double s2 = univariate_slope(2.0, 2.0);
  const double s1 = univariate_slope(1.0, 1.0);
  const bool pass = s2 >= -0.6 && s2 <= -0.4 && s1 >= -1.15 && s1 <= -0.85;
  return {pass, "slope p=q=2: " + fmt(s2) + " (band [-0.6,-0.4]); p=q=1: " + fmt(s1) +
                    " (band [-1.15,-0.85])"};
}

Outcome rate_p_below_q() {
  const double s = univariate_slope(1.0, 2.0);
  return {s >= -0.65 && s <= -0.35, "slope p=1 q=2: " + fmt(s) + " (band [-0.65,-0.35])"};
}

Outcome bivariate_envelope() {
  const int depth = 14;
  const auto f = extremal(2.0, depth, 7, 2);
  const auto ns = range(4, 10);
  MeasurePlan plan;
  plan.kind = MeasureKind::stratified_mc;
  plan.samples = kDefaultSamples;
  plan.seed = 7;
  const auto records = convergence_study(f.handle, 2.0, 2.0, 2, ns, plan);
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : records) {
    const double ratio = r.error / (std::exp2(-r.n / 2.0) * r.n);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {hi / lo <= 6.0, "error/(2^(-n/2) n) in [" + fmt(lo) + ", " + fmt(hi) + "], max/min " +
                              fmt(hi / lo) + " (limit 6)"};
}

Outcome coefficient_decay() {
  bool pass = true;
  std::string detail;
  for (int d = 1; d <= 2; ++d) {
    const auto f = kink(default_kink_anchor(d));
    const auto profile = decay_profile(f.handle, 1.0, d == 1 ? 14 : 10);
    double top = 0.0;
    for (const auto& e : profile) {
      if (e.order >= 1) top = std::max(top, e.value);
    }
    const double ratio = top / profile[1].value;
    pass = pass && ratio <= 2.0;
    detail += "kink d=" + std::to_string(d) + " max/order-1 " + fmt(ratio) + "; ";
  }
  for (double p : {1.0, 2.0}) {
    for (int d = 1; d <= 2; ++d) {
      const int n = d == 1 ? 14 : 10;
      const auto f = extremal(p, n, 7, d);
      double lo = INFINITY, hi = 0.0;
      for (const auto& e : decay_profile(f.handle, p, n)) {
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
      }
      pass = pass && lo >= 0.9 && hi <= 1.1;
      detail += "extremal p=" + fmt(p) + " d=" + std::to_string(d) + " [" + fmt(lo) + "," + fmt(hi) + "]; ";
    }
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome comb_sums() {
  const auto ns = range(8, 16);
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int d = 1; d <= 3; ++d) {
      double tail_lo = INFINITY, tail_hi = 0.0, bulk_lo = INFINITY, bulk_hi = 0.0;
      for (const auto& r : comb_check(alpha, d, ns)) {
        tail_lo = std::min(tail_lo, r.ratio_tail);
        tail_hi = std::max(tail_hi, r.ratio_tail);
        bulk_lo = std::min(bulk_lo, r.ratio_bulk);
        bulk_hi = std::max(bulk_hi, r.ratio_bulk);
      }
      worst = std::max({worst, tail_hi / tail_lo, bulk_hi / bulk_lo});
    }
  }
  return {worst <= 2.0, "largest max/min ratio across n " + fmt(worst) + " (limit 2)"};
}

Outcome non_compactness() {
  const auto report = noncompact_demo(8);
  return {report.unit_distances && report.single_spikes,
          std::string("unit off-diagonal distances ") + (report.unit_distances ? "yes" : "NO") +
              ", single unit spikes " + (report.single_spikes ? "yes" : "NO")};
}

Outcome cubature() {
  bool pass = true;
  std::string detail;
  const auto ns = range(2, 10);
  for (int d = 1; d <= 2; ++d) {
    for (const char* id : {"const", "multilinear", "x2", "exp", "poly-mix"}) {
      const auto rows = cubature_study(smooth(id, d), ns);
      const bool exact = std::string(id) == "const" || std::string(id) == "multilinear";
      bool ok = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (exact) {
          ok = ok && rows[i].abs_error <= (std::string(id) == "const" ? 0.0 : 1e-14);
        } else if (i > 0) {
          // Non-increasing: the signed error of x2 in d = 2 crosses zero
          // between n = 5 and 6 and is identical at n = 6 and 7.
          ok = ok && rows[i].abs_error <= rows[i - 1].abs_error * (1.0 + 1e-9);
        }
      }
      if (!ok) detail += std::string(id) + " d=" + std::to_string(d) + " not decreasing; ";
      pass = pass && ok;
      if (std::string(id) == "x2" && d == 2) {
        pass = pass && rows.back().abs_error <= 1e-3;
        detail += "x2 d=2 n=10 error " + fmt(rows.back().abs_error) + "; ";
      }
    }
    // The kink error is not monotone from one n to the next (the anchor
    // sits at varying offsets within its cell); compare across two levels.
    const auto rows = cubature_study(kink(default_kink_anchor(d)), ns);
    bool decays = true;
    for (std::size_t i = 2; i < rows.size(); ++i) decays = decays && rows[i].abs_error < rows[i - 2].abs_error;
    pass = pass && decays;
    detail += "kink d=" + std::to_string(d) + " n=10 error " + fmt(rows.back().abs_error) + "; ";
  }
  detail += "constants exact";
  return {pass, detail};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 2), level(0, 5), qpick(1, 4);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int d = dim(rng);
    std::vector<int> entries(static_cast<std::size_t>(d));
    for (int& e : entries) e = level(rng);
    const LevelVector j(entries);
    const double q = qpick(rng);
    FaberSeries s(reduced_order(j), d);
    for (double& c : s.coefficients(j)) c = unit(rng);
    const int finest = *std::max_element(entries.begin(), entries.end());
    const double exact = block_lq_exact(j, s.coefficients(j), q);
    // |c v|^q is a polynomial of degree q <= 4 per axis on each cell, which
    // Gauss order 3 integrates exactly.
    const double measured = lq_norm(synthesize(s), MeasureSpec{q, CompositeGauss{3, finest + 1}}).value;
    worst = std::max(worst, std::abs(measured - exact) / exact);
  }
  return {worst <= 1e-8, "50 pieces, max relative deviation " + fmt(worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "biorthogonality round trip", 10, biorthogonality},
      {2, "interpolation at nodes", 10, interpolation},
      {3, "node accounting", 30, node_accounting},
      {4, "rate with q = p", 120, rate_q_equals_p},
      {5, "rate with p < q", 120, rate_p_below_q},
      {6, "bivariate envelope", 300, bivariate_envelope},
      {7, "coefficient decay", 60, coefficient_decay},
      {8, "hyperbolic-cross sums", 10, comb_sums},
      {9, "non-compactness", 1, non_compactness},
      {10, "cubature", 60, cubature},
      {11, "block norm oracle", 10, oracle_equivalence},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %2d %-28s %s | %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), outcome.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
