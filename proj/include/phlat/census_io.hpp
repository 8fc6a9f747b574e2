#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "phlat/counting.hpp"
#include "phlat/io.hpp"

namespace phlat {

constexpr int kCensusFormatVersion = 1;

inline std::filesystem::path census_cache_dir() {
  if (const char* env = std::getenv("PHLAT_CACHE")) return std::filesystem::path(env);
  return std::filesystem::path("phlat-cache");
}

inline std::filesystem::path census_cache_file(size_t n, long long d) {
  return census_cache_dir() / "census" /
         ("n" + std::to_string(n) + "_d" + std::to_string(d) + ".jsonl");
}

inline json small_matrix_to_json(const SmallMatrix& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline SmallMatrix small_matrix_from_json(const json& j) {
  size_t r = j.size(), c = j.at(0).size();
  SmallMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t k = 0; k < c; ++k) m(i, k) = j.at(i).at(k).get<long long>();
  return m;
}

inline void save_census(const ClassCensus& census) {
  auto path = census_cache_file(census.n, census.d);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  check(out.good(), errc::internal, "cannot write census cache " + path.string());
  json head{{"format_version", kCensusFormatVersion},
            {"n", census.n},
            {"d", census.d},
            {"total", census.total.str()},
            {"classes", census.classes()}};
  out << head.dump() << "\n";
  for (auto& o : census.orbits) {
    json row{{"rep", small_matrix_to_json(o.rep)}, {"size", o.size},   {"cokernel", o.cokernel},
             {"det_bop", o.det_bop},               {"supersplit", o.supersplit},
             {"max_block", o.max_block}};
    out << row.dump() << "\n";
  }
}

inline std::optional<ClassCensus> load_census(size_t n, long long d) {
  auto path = census_cache_file(n, d);
  std::ifstream in(path);
  if (!in.good()) return std::nullopt;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  json head = json::parse(line, nullptr, false);
  if (head.is_discarded() || head.value("format_version", -1) != kCensusFormatVersion ||
      head.value("n", size_t{0}) != n || head.value("d", 0LL) != d)
    return std::nullopt;
  ClassCensus census{n, d, Int(head.at("total").get<std::string>()), {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded()) return std::nullopt;
    CensusOrbit o;
    o.rep = small_matrix_from_json(row.at("rep"));
    o.size = row.at("size").get<size_t>();
    o.cokernel = row.at("cokernel").get<std::string>();
    o.det_bop = row.at("det_bop").get<std::string>();
    o.supersplit = row.at("supersplit").get<bool>();
    o.max_block = row.at("max_block").get<size_t>();
    census.orbits.push_back(std::move(o));
  }
  if (census.classes() != head.value("classes", size_t{0})) return std::nullopt;
  return census;
}

// census with the file cache in front
inline ClassCensus ph_count_census_cached(size_t n, long long d, size_t budget = 50'000'000) {
  if (auto hit = load_census(n, d)) return *hit;
  ClassCensus census = ph_count_bruteforce(n, d, budget);
  save_census(census);
  return census;
}

}  // namespace phlat
