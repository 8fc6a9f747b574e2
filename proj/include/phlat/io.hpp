#pragma once

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "phlat/matrix.hpp"

namespace phlat {

using json = nlohmann::json;

// Text grammar: row (';' row)*, row := int (ws int)*.
inline IntMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  std::string segment;
  std::stringstream ss(text);
  while (std::getline(ss, segment, ';')) {
    std::vector<Int> row;
    std::istringstream rs(segment);
    std::string tok;
    while (rs >> tok) {
      try {
        row.emplace_back(tok);
      } catch (...) {
        fail(errc::parse, "bad integer token '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  check(!rows.empty(), errc::parse, "empty matrix");
  size_t n = rows[0].size();
  for (auto& r : rows) check(r.size() == n, errc::parse, "ragged rows in matrix");
  IntMatrix m(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

inline std::string format_matrix_text(const IntMatrix& m) {
  std::string s;
  for (size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += m(i, j).str();
    }
  }
  return s;
}

inline json matrix_to_json(const IntMatrix& m) {
  json data = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    data.push_back(row);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline IntMatrix matrix_from_json(const json& j) {
  check(j.contains("rows") && j.contains("cols") && j.contains("data"), errc::parse,
        "matrix JSON needs rows/cols/data");
  size_t r = j["rows"].get<size_t>(), c = j["cols"].get<size_t>();
  check(r >= 1 && c >= 1, errc::parse, "matrix shape must be positive");
  const json& data = j["data"];
  check(data.is_array() && data.size() == r, errc::parse, "data row count mismatch");
  IntMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    check(data[i].is_array() && data[i].size() == c, errc::parse, "data col count mismatch");
    for (size_t k = 0; k < c; ++k) {
      const json& v = data[i][k];
      if (v.is_number_integer())
        m(i, k) = Int(v.get<long long>());
      else if (v.is_string())
        m(i, k) = Int(v.get<std::string>());
      else
        fail(errc::parse, "matrix entries must be integers or integer strings");
    }
  }
  return m;
}

// Accepts either the text grammar or the JSON object form.
inline IntMatrix parse_matrix(const std::string& s) {
  size_t i = s.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && s[i] == '{') {
    json j = json::parse(s, nullptr, false);
    check(!j.is_discarded(), errc::parse, "invalid JSON matrix");
    return matrix_from_json(j);
  }
  return parse_matrix_text(s);
}

}  // namespace phlat
