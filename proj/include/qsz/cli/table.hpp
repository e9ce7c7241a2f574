#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qsz::cli {

/// Empty cell, number, integer or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Summary records written after the rows (CSV: "# key=value" lines).
  std::vector<std::pair<std::string, Cell>> footer;
};

/// 17 significant digits, locale independent.
std::string format_number(double value);

/// One header row, fixed column order, comma separated.
void write_csv(std::ostream& os, const Table& table);
/// Array of row objects, or {"rows": [...], "footer": {...}} when the table
/// has a footer.
void write_json(std::ostream& os, const Table& table);

}  // namespace qsz::cli
