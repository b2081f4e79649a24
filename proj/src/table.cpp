#include "pqed/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pqed::cli {

void Document::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the column count");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void header_lines(std::ostringstream& os, const nlohmann::ordered_json& node, const std::string& prefix) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      header_lines(os, *it, key);
    } else if (it->is_array()) {
      os << "# " << key << " = ";
      for (std::size_t i = 0; i < it->size(); ++i) os << (i ? " " : "") << scalar_text((*it)[i]);
      os << '\n';
    } else {
      os << "# " << key << " = " << scalar_text(*it) << '\n';
    }
  }
}

}  // namespace

std::string render_csv(const Document& doc) {
  std::ostringstream os;
  header_lines(os, doc.meta, "");
  for (std::size_t i = 0; i < doc.columns.size(); ++i) os << (i ? "," : "") << doc.columns[i];
  os << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const double* d = std::get_if<double>(&row[i])) os << format_number(*d);
      else os << csv_field(std::get<std::string>(row[i]));
    }
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Document& doc) {
  nlohmann::ordered_json root;
  root["meta"] = doc.meta;
  root["columns"] = doc.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i])) {
        if (std::isfinite(*d)) obj[doc.columns[i]] = *d;
        else obj[doc.columns[i]] = nullptr;
      } else {
        obj[doc.columns[i]] = std::get<std::string>(row[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

}  // namespace pqed::cli
