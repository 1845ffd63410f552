#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "faber/dyadic.hpp"
#include "faber/error.hpp"
#include "faber/experiments.hpp"
#include "faber/parallel.hpp"
#include "faber/series_io.hpp"
#include "faber/util.hpp"
#include "table.hpp"

namespace faber::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  int dim = 1;
  std::string n_text = "0..8";
  std::vector<int> ns;
  double p = 2.0;
  std::string q_text = "2";
  double q = 2.0;
  std::string func = "extremal";
  int depth = 14;
  std::uint64_t seed = 0;
  int level = 0;
  std::vector<double> anchor;
  double alpha = 1.0;
  int max_level = 8;
  std::string method = "auto";
  int order = kDefaultGaussOrder;
  std::optional<int> mesh_level;
  std::size_t samples = kDefaultSamples;
  std::string out_path;
  std::string format = "csv";
  bool print_config = false;
};

std::vector<int> parse_range(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("--n: cannot parse '" + text + "' (expected a or a..b)");
    }
    return v;
  };
  const auto dots = text.find("..");
  int first = 0, last = 0;
  if (dots == std::string::npos) {
    first = last = parse_int(text);
  } else {
    first = parse_int(std::string_view(text).substr(0, dots));
    last = parse_int(std::string_view(text).substr(dots + 2));
  }
  if (first < 0) throw UsageError("--n: budgets must be non-negative");
  if (last < first) throw UsageError("--n: range '" + text + "' is empty");
  if (last > 40) throw UsageError("--n: budget " + std::to_string(last) + " is out of reach");
  std::vector<int> ns;
  for (int n = first; n <= last; ++n) ns.push_back(n);
  return ns;
}

double parse_q(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("--q: cannot parse '" + text + "'");
  }
  return v;
}

MeasureKind method_kind(const RunConfig& cfg) {
  if (cfg.method == "composite") return MeasureKind::composite;
  if (cfg.method == "mc") return MeasureKind::stratified_mc;
  if (cfg.method == "sup") return MeasureKind::sup_grid;
  if (std::isinf(cfg.q)) return MeasureKind::sup_grid;
  return cfg.dim == 1 ? MeasureKind::composite : MeasureKind::stratified_mc;
}

CatalogParams catalog_params(const RunConfig& cfg) {
  CatalogParams params;
  params.p = cfg.p;
  params.depth = cfg.depth;
  params.seed = cfg.seed;
  params.level = cfg.level;
  params.anchor = cfg.anchor;
  return params;
}

// Finite Faber sums have all creases on the grid one level below their
// budget; a composite mesh at least that fine integrates them cell by cell.
int crease_level(const RunConfig& cfg) {
  if (cfg.func == "extremal") return cfg.depth + 1;
  if (cfg.func == "hat") return cfg.level + 1;
  return 0;
}

MeasurePlan measure_plan(const RunConfig& cfg) {
  MeasurePlan plan;
  plan.kind = method_kind(cfg);
  plan.order = cfg.order;
  plan.mesh_level = cfg.mesh_level;
  plan.min_mesh_level = crease_level(cfg);
  plan.samples = cfg.samples;
  plan.seed = cfg.seed;
  return plan;
}

bool uses_measure(const std::string& sub) {
  return sub == "recover" || sub == "rates" || sub == "widths";
}

void validate(RunConfig& cfg) {
  if (cfg.dim < 1) throw UsageError("--dim: must be >= 1");
  cfg.ns = parse_range(cfg.n_text);
  cfg.q = parse_q(cfg.q_text);
  if (!(cfg.p >= 1.0) || std::isinf(cfg.p)) throw UsageError("--p: must lie in [1, inf)");
  if (std::isnan(cfg.q) || cfg.q < 1.0) throw UsageError("--q: must be >= 1 or inf");
  if (cfg.depth < 1) throw UsageError("--depth: must be >= 1");
  if (cfg.level < 0 || cfg.level > kMaxLevel) throw UsageError("--level: must lie in [0, 62]");
  if (!(cfg.alpha > 0.0) || std::isinf(cfg.alpha)) throw UsageError("--alpha: must be positive");
  if (cfg.max_level < 2 || cfg.max_level > 30) throw UsageError("--max-level: must lie in [2, 30]");
  if (cfg.order < 2 || cfg.order > 64) throw UsageError("--order: must lie in [2, 64]");
  if (cfg.mesh_level && *cfg.mesh_level < 1) throw UsageError("--mesh-level: must be >= 1");
  if (cfg.samples < kMinSamples) throw UsageError("--samples: must be >= 1000");
  if (!cfg.anchor.empty() && cfg.anchor.size() != static_cast<std::size_t>(cfg.dim)) {
    throw UsageError("--anchor: needs one coordinate per dimension");
  }
  if ((cfg.subcommand == "analyze" || cfg.subcommand == "recover") && cfg.ns.size() != 1) {
    throw UsageError("--n: " + cfg.subcommand + " takes a single budget");
  }
  if (cfg.subcommand == "levels" && cfg.ns.size() != 1) {
    throw UsageError("--n: levels takes a single budget");
  }
  if (uses_measure(cfg.subcommand)) {
    const auto plan = measure_plan(cfg);
    try {
      plan.resolve(cfg.ns.back(), cfg.q).validate(static_cast<std::size_t>(cfg.dim));
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--method/--mesh-level/--q: ") + e.what());
    }
  }
}

std::string method_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::composite:
      return "composite";
    case MeasureKind::stratified_mc:
      return "mc";
    case MeasureKind::sup_grid:
      return "sup";
  }
  return "?";
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  const auto plan = measure_plan(cfg);
  nlohmann::ordered_json j;
  j["subcommand"] = cfg.subcommand;
  j["dim"] = cfg.dim;
  j["n"] = cfg.ns;
  j["p"] = cfg.p;
  j["q"] = cfg.q_text;
  j["func"] = cfg.func;
  j["depth"] = cfg.depth;
  j["seed"] = cfg.seed;
  j["level"] = cfg.level;
  j["anchor"] = cfg.anchor.empty() ? default_kink_anchor(cfg.dim) : cfg.anchor;
  j["alpha"] = cfg.alpha;
  j["max_level"] = cfg.max_level;
  j["method"] = method_name(plan.kind);
  j["gauss_order"] = plan.order;
  j["mesh_level"] = cfg.mesh_level ? nlohmann::ordered_json(*cfg.mesh_level)
                                   : nlohmann::ordered_json("max(n+" +
                                                            std::to_string(kDefaultMeshOffset) +
                                                            "," + std::to_string(plan.min_mesh_level) + ")");
  j["samples"] = plan.samples;
  j["threads"] = worker_count();
  j["format"] = cfg.format;
  j["out"] = cfg.out_path;
  return j;
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : fallback_(fallback) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path, std::ios::binary);
      if (!file_) throw Error("cannot open output file '" + cfg.out_path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit(const RunConfig& cfg, const Table& table, std::ostream& out) {
  Output sink(cfg, out);
  if (cfg.format == "json") {
    table.write_json(sink.stream());
  } else {
    table.write_csv(sink.stream());
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

TestFunction make_function(const RunConfig& cfg) {
  return from_catalog(cfg.func, cfg.dim, catalog_params(cfg));
}

int cmd_levels(const RunConfig& cfg, std::ostream& out) {
  const auto levels = levels_up_to(cfg.ns.front(), cfg.dim);
  Table table;
  for (int i = 1; i <= cfg.dim; ++i) table.columns.push_back("j_" + std::to_string(i));
  for (const auto& j : levels) {
    std::vector<Cell> row;
    for (std::size_t i = 0; i < j.dim(); ++i) {
      out << (i ? " " : "") << j[i];
      row.emplace_back(static_cast<std::int64_t>(j[i]));
    }
    out << '\n';
    table.add(std::move(row));
  }
  if (!cfg.out_path.empty()) emit(cfg, table, out);
  out << "levels d=" << cfg.dim << " n=" << cfg.ns.front() << ": " << levels.size()
      << " level vectors, nodes m=" << node_count(cfg.ns.front(), cfg.dim) << '\n';
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_function(cfg);
  SampleCache cache(f.handle);
  const FaberSeries s = analyze(cache, cfg.ns.front());
  {
    Output sink(cfg, out);
    if (cfg.format == "json") {
      sink.stream() << to_json(s) << '\n';
    } else {
      write_text(sink.stream(), s);
    }
  }
  out << "analyze " << cfg.func << " d=" << cfg.dim << " n=" << cfg.ns.front()
      << ": coefficients=" << s.size() << " integral=" << fmt(integrate(s))
      << " nodes m=" << cache.size() << '\n';
  return kExitOk;
}

Table rates_table(const std::vector<RateRecord>& records) {
  Table table{{"n", "m", "error", "error_estimate", "reference"}, {}};
  for (const auto& r : records) {
    table.add({static_cast<std::int64_t>(r.n), static_cast<std::int64_t>(r.m), r.error,
               r.error_estimate, r.reference});
  }
  return table;
}

int cmd_recover(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_function(cfg);
  const auto records =
      convergence_study(f.handle, cfg.p, cfg.q, cfg.dim, cfg.ns, measure_plan(cfg));
  emit(cfg, rates_table(records), out);
  const auto& r = records.front();
  out << "recover " << cfg.func << " d=" << cfg.dim << " n=" << r.n << ": L_" << cfg.q_text
      << " error=" << fmt(r.error) << " (+-" << fmt(r.error_estimate) << ") nodes m=" << r.m
      << '\n';
  return kExitOk;
}

int cmd_rates(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_function(cfg);
  const auto records =
      convergence_study(f.handle, cfg.p, cfg.q, cfg.dim, cfg.ns, measure_plan(cfg));
  emit(cfg, rates_table(records), out);
  const double e_log = log_exponent(cfg.p, cfg.q, cfg.dim);
  out << "rates " << cfg.func << " d=" << cfg.dim << " p=" << fmt(cfg.p) << " q=" << cfg.q_text
      << ": ";
  try {
    const auto fit = fit_rate(records, e_log);
    out << "slope=" << fmt(fit.slope) << " (log exponent " << fmt(e_log) << ", rms "
        << fmt(fit.residual_rms) << ", excluded " << fit.excluded.size() << ")";
  } catch (const InvalidArgument& e) {
    out << "slope=unavailable (" << e.what() << ")";
  }
  out << " nodes m=" << records.back().m << '\n';
  return kExitOk;
}

int cmd_widths(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_function(cfg);
  const auto table_data =
      sampling_width_table(f.handle, cfg.p, cfg.q, cfg.dim, cfg.ns, measure_plan(cfg));
  Table table{{"m", "error", "upper_ref", "lower_ref"}, {}};
  for (const auto& r : table_data.rows) {
    table.add({static_cast<std::int64_t>(r.m), r.error, r.upper_ref, r.lower_ref});
  }
  emit(cfg, table, out);
  out << "widths " << cfg.func << " d=" << cfg.dim << " p=" << fmt(cfg.p) << " q=" << cfg.q_text
      << ": log-log slope="
      << (table_data.loglog_slope ? fmt(*table_data.loglog_slope) : std::string("unavailable"))
      << " nodes m=" << table_data.rows.back().m << '\n';
  return kExitOk;
}

int cmd_cubature(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_function(cfg);
  const auto rows = cubature_study(f, cfg.ns);
  Table table{{"n", "m", "abs_error", "reference"}, {}};
  for (const auto& r : rows) {
    table.add({static_cast<std::int64_t>(r.n), static_cast<std::int64_t>(r.m), r.abs_error,
               r.reference});
  }
  emit(cfg, table, out);
  out << "cubature " << cfg.func << " d=" << cfg.dim << ": abs error=" << fmt(rows.back().abs_error)
      << " at n=" << rows.back().n << " nodes m=" << rows.back().m << '\n';
  return kExitOk;
}

int cmd_noncompact(const RunConfig& cfg, std::ostream& out) {
  const auto report = noncompact_demo(cfg.max_level);
  if (cfg.format == "json") {
    nlohmann::ordered_json doc;
    doc["max_level"] = report.max_level;
    doc["witness"] = report.witness;
    doc["distance"] = report.distance;
    auto profiles = nlohmann::ordered_json::array();
    for (const auto& profile : report.profiles) {
      auto values = nlohmann::ordered_json::array();
      for (const auto& e : profile) values.push_back(e.value);
      profiles.push_back(values);
    }
    doc["profiles"] = profiles;
    doc["sequence_norms"] = report.sequence_norms;
    doc["unit_distances"] = report.unit_distances;
    doc["single_spikes"] = report.single_spikes;
    doc["conclusion"] = report.conclusion;
    Output sink(cfg, out);
    sink.stream() << doc.dump(2) << '\n';
  } else {
    Table table{{"j", "l", "witness", "distance", "profile_peak_j", "sequence_norm_j"}, {}};
    for (std::size_t j = 0; j < report.distance.size(); ++j) {
      for (std::size_t l = 0; l < report.distance.size(); ++l) {
        table.add({static_cast<std::int64_t>(j), static_cast<std::int64_t>(l),
                   report.witness[std::min(j, l)], report.distance[j][l],
                   report.profiles[j][j].value, report.sequence_norms[j]});
      }
    }
    emit(cfg, table, out);
  }
  out << "noncompact max_level=" << cfg.max_level << ": " << report.conclusion
      << " nodes m=" << node_count(cfg.max_level, 1) << '\n';
  return report.unit_distances && report.single_spikes ? kExitOk : kExitComputation;
}

int cmd_comb(const RunConfig& cfg, std::ostream& out) {
  const auto rows = comb_check(cfg.alpha, cfg.dim, cfg.ns);
  Table table{{"n", "ratio_tail", "ratio_bulk"}, {}};
  double tail_lo = INFINITY, tail_hi = 0.0, bulk_lo = INFINITY, bulk_hi = 0.0;
  for (const auto& r : rows) {
    table.add({static_cast<std::int64_t>(r.n), r.ratio_tail, r.ratio_bulk});
    tail_lo = std::min(tail_lo, r.ratio_tail);
    tail_hi = std::max(tail_hi, r.ratio_tail);
    bulk_lo = std::min(bulk_lo, r.ratio_bulk);
    bulk_hi = std::max(bulk_hi, r.ratio_bulk);
  }
  emit(cfg, table, out);
  out << "comb alpha=" << fmt(cfg.alpha) << " d=" << cfg.dim << ": " << rows.size()
      << " rows, ratio_tail in [" << fmt(tail_lo) << ", " << fmt(tail_hi) << "], ratio_bulk in ["
      << fmt(bulk_lo) << ", " << fmt(bulk_hi) << "]\n";
  return kExitOk;
}

struct Flags {
  bool n = false, pq = false, func = false, measure = false, alpha = false, max_level = false,
       format = true;
};

CLI::App* add_subcommand(CLI::App& app, RunConfig& cfg, const std::string& name,
                         const std::string& help, Flags flags) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--dim", cfg.dim, "dimension d");
  if (flags.n) sub->add_option("--n", cfg.n_text, "budget n or inclusive range a..b");
  if (flags.pq) {
    sub->add_option("--p", cfg.p, "smoothness integrability p (r = 1/p)");
    sub->add_option("--q", cfg.q_text, "error norm exponent q (number or inf)");
  }
  if (flags.func) {
    sub->add_option("--func", cfg.func, "test function id")
        ->check(CLI::IsMember(catalog_ids()));
    sub->add_option("--depth", cfg.depth, "depth J of the extremal function");
    sub->add_option("--seed", cfg.seed, "seed for extremal signs and Monte Carlo draws");
    sub->add_option("--level", cfg.level, "level j of the hat function");
    sub->add_option("--anchor", cfg.anchor, "kink anchor, one coordinate per axis");
    if (!flags.pq) sub->add_option("--p", cfg.p, "p of the extremal function");
  }
  if (flags.measure) {
    sub->add_option("--method", cfg.method, "error measure: auto, composite, mc or sup")
        ->check(CLI::IsMember({"auto", "composite", "mc", "sup"}));
    sub->add_option("--order", cfg.order, "Gauss order G of the composite rule");
    sub->add_option_function<int>(
        "--mesh-level", [&cfg](int v) { cfg.mesh_level = v; },
        "composite mesh level L (default n+2, at least the crease level)");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample count N");
  }
  if (flags.alpha) sub->add_option("--alpha", cfg.alpha, "decay exponent alpha");
  if (flags.max_level) sub->add_option("--max-level", cfg.max_level, "largest hat level");
  sub->add_option("--out", cfg.out_path, "output path (default: standard output)");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--print-config", cfg.print_config, "print the resolved configuration and exit");
  sub->callback([&cfg, name] { cfg.subcommand = name; });
  return sub;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sparse-grid Faber-Schauder sampling recovery"};
  app.require_subcommand(1);
  app.add_flag("--print-config", cfg.print_config, "print the default configuration and exit");

  add_subcommand(app, cfg, "levels", "list level vectors with |j|_1 <= n", {.n = true});
  add_subcommand(app, cfg, "analyze", "Faber coefficients of a test function",
                 {.n = true, .func = true});
  add_subcommand(app, cfg, "recover", "L_q error of I_n f at one budget",
                 {.n = true, .pq = true, .func = true, .measure = true});
  add_subcommand(app, cfg, "rates", "convergence study with rate fit",
                 {.n = true, .pq = true, .func = true, .measure = true});
  add_subcommand(app, cfg, "widths", "errors re-indexed by node count",
                 {.n = true, .pq = true, .func = true, .measure = true});
  add_subcommand(app, cfg, "cubature", "integration error of I_n f",
                 {.n = true, .func = true});
  add_subcommand(app, cfg, "noncompact", "hat-family non-compactness demonstration",
                 {.max_level = true});
  add_subcommand(app, cfg, "comb", "hyperbolic-cross sum ratios", {.n = true, .alpha = true});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    // A bare --print-config needs no subcommand.
    if (args.size() == 1 && args.front() == "--print-config") {
      cfg.subcommand = "none";
      validate(cfg);
      out << config_json(cfg).dump(2) << '\n';
      return kExitOk;
    }
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    validate(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (cfg.print_config) {
    out << config_json(cfg).dump(2) << '\n';
    return kExitOk;
  }

  try {
    const auto& sub = cfg.subcommand;
    if (sub == "levels") return cmd_levels(cfg, out);
    if (sub == "analyze") return cmd_analyze(cfg, out);
    if (sub == "recover") return cmd_recover(cfg, out);
    if (sub == "rates") return cmd_rates(cfg, out);
    if (sub == "widths") return cmd_widths(cfg, out);
    if (sub == "cubature") return cmd_cubature(cfg, out);
    if (sub == "noncompact") return cmd_noncompact(cfg, out);
    if (sub == "comb") return cmd_comb(cfg, out);
    err << "usage error: unknown subcommand\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
}

}  // namespace faber::cli
