#include "faber/series_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <vector>

#include "faber/error.hpp"
#include "faber/util.hpp"

namespace faber {

namespace {

void store(FaberSeries& s, std::vector<int> j_entries, std::vector<std::uint64_t> k_entries,
           double value, const std::string& where) {
  const LevelVector j(std::move(j_entries));
  const auto index = s.find_level(j);
  if (index < 0) throw InvalidArgument(where + ": level outside the budget");
  const TranslationVector k(std::move(k_entries));
  check_translation(j, k);
  s.coefficients(static_cast<std::size_t>(index))[flat_index(j, k)] = value;
}

double parse_double(const std::string& token, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InvalidArgument(where + ": cannot parse value '" + token + "'");
  }
  if (!std::isfinite(value)) throw InvalidArgument(where + ": value must be finite");
  return value;
}

}  // namespace

void write_text(std::ostream& out, const FaberSeries& s) {
  out << "dim " << s.dim() << " budget " << s.budget() << '\n';
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    const auto& j = s.levels()[l];
    const auto c = s.coefficients(l);
    std::uint64_t i = 0;
    for (const auto& k : translations(j)) {
      for (int e : j.entries()) out << e << ' ';
      for (auto e : k.entries()) out << e << ' ';
      out << format_double(c[i++]) << '\n';
    }
  }
}

FaberSeries read_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("series text: missing header");
  std::istringstream header(line);
  std::string dim_word, budget_word;
  int d = 0, n = -1;
  if (!(header >> dim_word >> d >> budget_word >> n) || dim_word != "dim" ||
      budget_word != "budget") {
    throw InvalidArgument("series text: header must read 'dim <d> budget <n>'");
  }
  FaberSeries s(n, d);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "series text line " + std::to_string(line_no);
    std::istringstream row(line);
    std::vector<int> j(static_cast<std::size_t>(d));
    std::vector<std::uint64_t> k(static_cast<std::size_t>(d));
    std::string value_token;
    for (auto& e : j) {
      if (!(row >> e)) throw InvalidArgument(where + ": bad level entry");
    }
    for (auto& e : k) {
      long long v = -1;
      if (!(row >> v) || v < 0) throw InvalidArgument(where + ": bad translation entry");
      e = static_cast<std::uint64_t>(v);
    }
    if (!(row >> value_token)) throw InvalidArgument(where + ": missing value");
    std::string extra;
    if (row >> extra) throw InvalidArgument(where + ": trailing fields");
    store(s, std::move(j), std::move(k), parse_double(value_token, where), where);
  }
  return s;
}

std::string to_json(const FaberSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t l = 0; l < s.level_count(); ++l) {
    const auto& j = s.levels()[l];
    const auto c = s.coefficients(l);
    std::uint64_t i = 0;
    for (const auto& k : translations(j)) {
      coeffs.push_back({{"j", std::vector<int>(j.entries().begin(), j.entries().end())},
                        {"k", std::vector<std::uint64_t>(k.entries().begin(), k.entries().end())},
                        {"value", c[i++]}});
    }
  }
  nlohmann::json doc = {{"dim", s.dim()}, {"budget", s.budget()}, {"coefficients", coeffs}};
  return doc.dump();
}

FaberSeries from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    FaberSeries s(doc.at("budget").get<int>(), doc.at("dim").get<int>());
    std::size_t row = 0;
    for (const auto& entry : doc.at("coefficients")) {
      const std::string where = "series json entry " + std::to_string(row++);
      auto j = entry.at("j").get<std::vector<int>>();
      auto k = entry.at("k").get<std::vector<std::uint64_t>>();
      if (j.size() != static_cast<std::size_t>(s.dim()) || k.size() != j.size()) {
        throw InvalidArgument(where + ": index length does not match dim");
      }
      store(s, std::move(j), std::move(k), entry.at("value").get<double>(), where);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("series json: ") + e.what());
  }
}

}  // namespace faber
