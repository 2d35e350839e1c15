#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eulerlab/errors.hpp"

namespace eulerlab::interface {

using Cell = std::variant<double, std::int64_t, std::string>;

/// A rectangular table bound for CSV.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != header.size()) throw input_error("ResultTable: row width does not match header");
    rows.push_back(std::move(row));
  }
};

/// Shortest text with 17 significant digits, "nan"/"inf"/"-inf" for non-finite, "0" for either zero.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string to_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error(path.string(), "cannot open for writing");
  out << text;
  out.close();
  if (!out) throw io_error(path.string(), "write failed");
}

/// Writes `<path>` as CSV and, if `summary` is not null, `<path stem>.json` beside it.
inline void write_results(const ResultTable& table, const std::filesystem::path& path,
                          const nlohmann::json& summary = nullptr) {
  write_text(path, to_csv(table));
  if (!summary.is_null()) {
    auto json_path = path;
    json_path.replace_extension(".json");
    write_text(json_path, summary.dump(2) + "\n");
  }
}

/// `<label>_<experiment>_<xmax>` with x_max printed as an integer when it is one.
inline std::string result_stem(const std::string& label, const std::string& experiment, double x_max) {
  std::string x;
  if (x_max == std::floor(x_max) && std::abs(x_max) < 1e18) {
    x = std::to_string(static_cast<std::int64_t>(x_max));
  } else {
    x = format_real(x_max);
  }
  return label + "_" + experiment + "_" + x;
}

}  // namespace eulerlab::interface
