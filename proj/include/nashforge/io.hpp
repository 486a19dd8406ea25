#pragma once

// JSON for partitioned polygons:
//   {"n": 4, "edges": [["a","b","c"], ...], "classes": [[1,3],[2,4]]}
// Edge [a, b, c] is the inward form a x + b y + c. Rationals are "p/q"
// strings (plain numbers are accepted on input). Class members are 1-based.

#include <nashforge/region.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace nashforge {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return make_rational(j.get<long>(), 1);
  if (j.is_number_float()) return Rational(j.get<double>());
  throw std::invalid_argument("expected a rational as \"p/q\" string or number");
}

inline Json partition_to_json(const EdgePartition& partition) {
  Json classes = Json::array();
  for (const auto& cls : partition.classes) {
    Json c = Json::array();
    for (std::size_t i : cls) c.push_back(i + 1);
    classes.push_back(std::move(c));
  }
  return classes;
}

inline EdgePartition partition_from_json(const Json& classes) {
  EdgePartition p;
  for (const auto& c : classes) {
    std::vector<std::size_t> members;
    for (const auto& i : c) {
      const long idx = i.get<long>();
      if (idx < 1) throw std::out_of_range("partition: edge indices are 1-based");
      members.push_back(static_cast<std::size_t>(idx - 1));
    }
    p.classes.push_back(std::move(members));
  }
  return p;
}

inline Json polygon_to_json(const ConvexPolygon& polygon, const std::optional<EdgePartition>& partition = {}) {
  Json j;
  j["n"] = polygon.n();
  Json edges = Json::array();
  for (const auto& e : polygon.edges())
    edges.push_back({rational_to_json(e.coefficients[0]), rational_to_json(e.coefficients[1]),
                     rational_to_json(e.constant)});
  j["edges"] = std::move(edges);
  if (partition) j["classes"] = partition_to_json(*partition);
  return j;
}

struct PartitionedPolygon {
  ConvexPolygon polygon;
  std::optional<EdgePartition> partition;
};

inline PartitionedPolygon polygon_from_json(const Json& j) {
  std::vector<LinearForm> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() != 3) throw std::invalid_argument("polygon: each edge needs [a, b, c]");
    edges.emplace_back(std::vector<Rational>{rational_from_json(e[0]), rational_from_json(e[1])},
                       rational_from_json(e[2]));
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != edges.size())
    throw std::invalid_argument("polygon: n does not match the number of edges");
  PartitionedPolygon out{ConvexPolygon(std::move(edges)), std::nullopt};
  if (j.contains("classes")) out.partition = partition_from_json(j.at("classes"));
  return out;
}

inline PartitionedPolygon load_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return polygon_from_json(Json::parse(in));
}

}  // namespace nashforge
