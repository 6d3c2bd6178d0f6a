#pragma once

// JSON cubic description: {"n": int, "k": [[a, b, c, value], ...]} with
// 1-based sorted index triples. Duplicates and out-of-range indices are
// rejected by the CubicForm constructor.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cubic.hpp"

namespace qmap {

inline CubicForm cubic_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("cubic config: missing integer field \"n\"");
  if (!j.contains("k") || !j["k"].is_array())
    throw std::invalid_argument("cubic config: missing array field \"k\"");
  int n = j["n"].get<int>();
  std::vector<std::array<double, 4>> entries;
  for (const auto& row : j["k"]) {
    if (!row.is_array() || row.size() != 4)
      throw std::invalid_argument("cubic config: each k entry must be [a,b,c,value]");
    entries.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                       row[3].get<double>()});
  }
  return CubicForm(n, entries);
}

inline CubicForm cubic_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cubic config: " + path);
  nlohmann::json j;
  in >> j;
  return cubic_from_json(j);
}

}  // namespace qmap
