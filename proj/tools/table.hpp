#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace faber::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Fixed-header table written as CSV or as a JSON array of row objects
/// whose keys are the column names.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

}  // namespace faber::cli
