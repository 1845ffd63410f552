#include "table.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "faber/util.hpp"

namespace faber::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row has the wrong width");
  rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_field(columns[c]);
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              out << format_double(v);
            } else if constexpr (std::is_same_v<V, std::string>) {
              out << csv_field(v);
            } else {
              out << v;
            }
          },
          row[c]);
    }
    out << "\r\n";
  }
}

void Table::write_json(std::ostream& out) const {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[columns[c]] = v; }, row[c]);
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace faber::cli
