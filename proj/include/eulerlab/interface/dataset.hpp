#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/lfunction/special_values.hpp"
#include "eulerlab/lfunction/zeros.hpp"

namespace eulerlab::interface {

using json = nlohmann::json;

inline constexpr double rank_vanishing_tolerance = 1e-6;

struct CurveRecord {
  std::string label;
  std::array<std::int64_t, 5> ainvs{};
  std::uint64_t conductor = 0;
  int root_number = 1;
  int rank = 0;
  std::vector<double> l_derivs;
  std::vector<double> zeros;  // rank-many 0.0 entries first
  bool parity_mismatch = false;  // root_number != (-1)^rank
  std::size_t line = 0;

  curves::CurveModel model() const { return {ainvs, conductor, root_number, label}; }
  lfunction::ZeroList zero_list() const { return lfunction::ZeroList::from_ordinates(zeros); }
  lfunction::LSpecialValues special_values() const { return {rank, l_derivs}; }
};

namespace detail {

inline const json& field(const json& obj, const char* name, std::size_t line) {
  auto it = obj.find(name);
  if (it == obj.end()) throw parse_error(name, line, "missing");
  return *it;
}

inline std::int64_t integer_field(const json& v, const char* name, std::size_t line) {
  if (!v.is_number_integer()) throw parse_error(name, line, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::vector<double> real_list(const json& v, const char* name, std::size_t line) {
  if (!v.is_array()) throw parse_error(name, line, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw parse_error(name, line, "expected an array of numbers");
    const double d = e.get<double>();
    if (!std::isfinite(d)) throw parse_error(name, line, "non-finite value");
    out.push_back(d);
  }
  return out;
}

// Line (1-based) where each top-level element of a JSON array starts.
inline std::vector<std::size_t> array_element_lines(const std::string& text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false, escaped = false, expect = false;
  for (char ch : text) {
    if (ch == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (ch == '\\') {
        escaped = true;
      } else if (ch == '"') {
        in_string = false;
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (depth == 1 && expect && ch != ']') {
      lines.push_back(line);
      expect = false;
    }
    if (ch == '"') {
      in_string = true;
    } else if (ch == '[' || ch == '{') {
      ++depth;
      if (depth == 1) expect = true;
    } else if (ch == ']' || ch == '}') {
      --depth;
    } else if (ch == ',' && depth == 1) {
      expect = true;
    }
  }
  return lines;
}

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

/// Checks the schema of one record; invariants are left to validate_record.
inline CurveRecord parse_record(const json& obj, std::size_t line) {
  if (!obj.is_object()) throw parse_error("record", line, "expected a JSON object");
  CurveRecord rec;
  rec.line = line;
  const json& label = detail::field(obj, "label", line);
  if (!label.is_string() || label.get<std::string>().empty()) throw parse_error("label", line, "expected a non-empty string");
  rec.label = label.get<std::string>();

  const json& ainvs = detail::field(obj, "ainvs", line);
  if (!ainvs.is_array()) throw parse_error("ainvs", line, "expected an array of 5 integers");
  if (ainvs.size() != 5) throw parse_error("ainvs", line, "expected exactly 5 integers, got " + std::to_string(ainvs.size()));
  for (std::size_t i = 0; i < 5; ++i) rec.ainvs[i] = detail::integer_field(ainvs[i], "ainvs", line);

  const std::int64_t n = detail::integer_field(detail::field(obj, "conductor", line), "conductor", line);
  if (n <= 0) throw parse_error("conductor", line, "must be positive");
  rec.conductor = static_cast<std::uint64_t>(n);

  const std::int64_t w = detail::integer_field(detail::field(obj, "root_number", line), "root_number", line);
  if (w != 1 && w != -1) throw parse_error("root_number", line, "must be +1 or -1");
  rec.root_number = static_cast<int>(w);

  const std::int64_t r = detail::integer_field(detail::field(obj, "rank", line), "rank", line);
  if (r < 0 || r > 64) throw parse_error("rank", line, "must be a small non-negative integer");
  rec.rank = static_cast<int>(r);

  rec.l_derivs = detail::real_list(detail::field(obj, "l_derivs", line), "l_derivs", line);
  rec.zeros = detail::real_list(detail::field(obj, "zeros", line), "zeros", line);
  return rec;
}

/// Throws validation_error on a broken invariant; sets parity_mismatch
/// instead of throwing when the root number disagrees with the rank.
inline void validate_record(CurveRecord& rec) {
  const std::string where = "record '" + rec.label + "' (line " + std::to_string(rec.line) + "): ";
  for (std::size_t i = 0; i < rec.zeros.size(); ++i) {
    if (rec.zeros[i] < 0.0) throw validation_error(where + "zeros must be non-negative");
    if (i > 0 && rec.zeros[i] < rec.zeros[i - 1]) throw validation_error(where + "zeros are not ascending");
  }
  int leading = 0;
  while (leading < static_cast<int>(rec.zeros.size()) && rec.zeros[leading] == 0.0) ++leading;
  if (leading != rec.rank) {
    throw validation_error(where + "rank " + std::to_string(rec.rank) + " but " + std::to_string(leading) +
                           " zeros at the center");
  }
  if (static_cast<int>(rec.l_derivs.size()) <= rec.rank) {
    throw validation_error(where + "l_derivs must include L^(rank)(E, 1)");
  }
  for (int k = 0; k < rec.rank; ++k) {
    if (!(std::abs(rec.l_derivs[k]) < rank_vanishing_tolerance)) {
      throw validation_error(where + "l_derivs[" + std::to_string(k) + "] should vanish below the rank");
    }
  }
  try {
    (void)rec.model();
  } catch (const input_error& e) {
    throw validation_error(where + e.what());
  }
  rec.parity_mismatch = rec.root_number != (rec.rank % 2 == 0 ? 1 : -1);
}

/// Parses a JSON array of records or JSON lines (one record per line).
inline std::vector<CurveRecord> parse_dataset(const std::string& text) {
  std::vector<CurveRecord> records;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return records;
  if (text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw parse_error("document", detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    const auto lines = detail::array_element_lines(text);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      records.push_back(parse_record(doc[i], i < lines.size() ? lines[i] : 0));
    }
  } else {
    std::istringstream in(text);
    std::string row;
    for (std::size_t line = 1; std::getline(in, row); ++line) {
      if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
      json obj;
      try {
        obj = json::parse(row);
      } catch (const json::parse_error& e) {
        throw parse_error("record", line, e.what());
      }
      records.push_back(parse_record(obj, line));
    }
  }
  std::unordered_set<std::string> seen;
  for (auto& rec : records) {
    validate_record(rec);
    if (!seen.insert(rec.label).second) {
      throw validation_error("duplicate label '" + rec.label + "' at line " + std::to_string(rec.line));
    }
  }
  return records;
}

inline std::vector<CurveRecord> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path, "cannot open dataset");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

inline const CurveRecord& find_record(const std::vector<CurveRecord>& records, const std::string& label) {
  for (const auto& r : records) {
    if (r.label == label) return r;
  }
  throw input_error("curve '" + label + "' not in dataset");
}

/// Fixture-schema JSON for one record.
inline json to_json(const CurveRecord& rec) {
  return json{{"label", rec.label},         {"ainvs", rec.ainvs}, {"conductor", rec.conductor},
              {"root_number", rec.root_number}, {"rank", rec.rank},   {"l_derivs", rec.l_derivs},
              {"zeros", rec.zeros}};
}

/// Builds a record from computed values, expanding zero multiplicities.
inline CurveRecord make_record(const curves::CurveModel& model, const lfunction::LSpecialValues& values,
                               const lfunction::ZeroList& zeros) {
  CurveRecord rec;
  rec.label = model.label();
  rec.ainvs = model.ainvs();
  rec.conductor = model.conductor();
  rec.root_number = model.root_number();
  rec.rank = values.r;
  rec.l_derivs = values.derivs;
  for (const auto& z : zeros) {
    for (int m = 0; m < z.multiplicity; ++m) rec.zeros.push_back(z.gamma);
  }
  return rec;
}

}  // namespace eulerlab::interface
