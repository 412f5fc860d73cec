#pragma once

// JSON (de)serialization of homology tables and verification reports.

#include <json.hpp>

#include "khoflow/homology.hpp"
#include "khoflow/moduli.hpp"

namespace khoflow {

inline nlohmann::json table_to_json(const BigradedTable& t) {
  nlohmann::json groups = nlohmann::json::array();
  for (auto& [ij, g] : t) {
    nlohmann::json e;
    e["h"] = ij.first;
    e["q"] = ij.second;
    e["free"] = g.free_rank;
    e["torsion"] = g.torsion;
    groups.push_back(e);
  }
  return nlohmann::json{{"groups", groups}};
}

inline BigradedTable table_from_json(const nlohmann::json& j) {
  BigradedTable t;
  for (auto& e : j.at("groups")) {
    HomologyGroup g;
    g.free_rank = e.at("free").get<std::int64_t>();
    for (auto& v : e.at("torsion")) g.torsion.push_back(v.get<std::int64_t>());
    t[{e.at("h").get<int>(), e.at("q").get<int>()}] = g;
  }
  return t;
}

inline std::string table_to_text(const BigradedTable& t) {
  std::ostringstream os;
  if (t.empty()) {
    os << "(trivial)\n";
    return os.str();
  }
  for (auto& [ij, g] : t)
    os << "Kh^{" << ij.first << "," << ij.second << "} = " << g.str() << "\n";
  return os.str();
}

inline nlohmann::json sweep_to_json(const SweepResult& sw) {
  nlohmann::json faces = nlohmann::json::array();
  for (auto& f : sw.faces) {
    nlohmann::json e;
    std::string v;
    for (std::size_t i = 0; i < sizeof(CubeVertex) * 8 && (f.vertex >> i) != 0; ++i)
      v += (f.vertex >> i & 1) ? '1' : '0';
    e["face"] = {{"vertex", (std::uint64_t)f.vertex}, {"axes", f.axes}};
    e["index"] = f.index;
    e["chain_count"] = f.chain_count;
    e["ladybug"] = f.ladybug;
    e["components"] = f.components;
    e["side"] = f.side;
    e["ok"] = f.ok;
    faces.push_back(e);
  }
  return nlohmann::json{{"faces", faces},
                        {"all_ok", sw.all_ok},
                        {"ladybug_faces", sw.ladybug_faces}};
}

}  // namespace khoflow
