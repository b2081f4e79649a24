#pragma once

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

namespace pqed::cli {

using Cell = std::variant<double, std::string>;

// One output file: metadata echoed in the header plus a rectangular table.
struct Document {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// 17 significant digits, scientific.
std::string format_number(double v);

// '#'-prefixed header lines ("# key = value"), a column line, then rows.
std::string render_csv(const Document& doc);
// {"meta": ..., "columns": [...], "rows": [{column: value, ...}, ...]}
std::string render_json(const Document& doc);

}  // namespace pqed::cli
