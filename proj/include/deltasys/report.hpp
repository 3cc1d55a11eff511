#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "constructions.hpp"
#include "delta_systems.hpp"
#include "extremal.hpp"
#include "hypergraph.hpp"
#include "intersecting.hpp"
#include "intersection.hpp"

namespace deltasys {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

inline Json to_json(const VertexSet& s) { return Json(std::vector<int>(s.begin(), s.end())); }

inline Json to_json(const std::vector<VertexSet>& family) {
  Json out = Json::array();
  for (const auto& s : family) out.push_back(to_json(s));
  return out;
}

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const DeltaSystemWitness& w) {
  return Json{{"center", to_json(w.center)}, {"petals", to_json(w.petals)}};
}

inline Json to_json(const AvdWitness& w) {
  Json groups = Json::array();
  for (const auto& g : w.groups) groups.push_back(to_json(g));
  return Json{{"host", to_json(w.host)}, {"blocks", to_json(w.blocks)}, {"groups", groups},
              {"a", w.a()},          {"b", w.b()},                {"d", w.d()}};
}

/// Reads {host, blocks, groups}; a, b and d are derived and ignored on input.
inline AvdWitness avd_from_json(const Json& j) {
  try {
    AvdWitness w;
    w.host = j.at("host").get<std::vector<int>>();
    w.blocks = j.at("blocks").get<std::vector<VertexSet>>();
    w.groups = j.at("groups").get<std::vector<std::vector<VertexSet>>>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed witness: ") + e.what());
  }
}

inline Json to_json(const FamilyWitness& w) {
  return Json{{"edges", to_json(w.edges)}, {"d", w.d}, {"common_intersection", to_json(w.common_intersection)}};
}

inline Json to_json(const KMFamily& f) { return Json{{"tag", to_string(f.tag)}, {"map", f.map}}; }

inline Json to_json(const HomogeneousCertificate& c) {
  Json witnesses = Json::array();
  for (const auto& per_edge : c.witnesses) {
    Json list = Json::array();
    for (const auto& w : per_edge) list.push_back(Json{{"center", to_json(w.center)}, {"petals", w.petals}});
    witnesses.push_back(list);
  }
  return Json{{"s", c.s},
              {"partition", to_json(c.partition.blocks())},
              {"pattern", c.pattern.as_lists()},
              {"rank", rank(c.pattern)},
              {"edges", to_json(c.subgraph.edges())},
              {"witnesses", witnesses}};
}

inline Json to_json(const ReportCheck& c) {
  Json j{{"name", c.name}, {"verdict", c.verdict}};
  if (!c.witness.empty()) j["witness"] = to_json(c.witness);
  j["claim"] = c.claim;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Json to_json(const ConstructionReport& r) {
  Json hist = Json::object();
  for (auto [cod, pairs] : r.codegree_histogram) hist[std::to_string(cod)] = pairs;
  Json j{{"n", r.n},
         {"m", r.m},
         {"sizes", {{"design", r.design_edges}, {"matching", r.matching_edges}, {"total", r.total_edges}}},
         {"codegree_histogram", hist},
         {"max_codegree", r.max_codegree},
         {"triangle_decomposition", r.triangle_decomposition},
         {"heavy_triangles", to_json(r.heavy_triangles)}};
  if (r.exhaustive_status)
    j["exhaustive"] = Json{{"status", to_string(*r.exhaustive_status)}, {"nodes", r.exhaustive_nodes}};
  j["verdict"] = r.verdict;
  if (r.verdict == "conditional") j["verdict_note"] = kConditionalNote;
  return j;
}

inline Json to_json(const ExtremalResult& r) {
  Json fams = Json::array();
  for (const auto& f : r.families) fams.push_back(to_json(f));
  return Json{{"n", r.n},
              {"k", r.k},
              {"config", to_string(r.config)},
              {"max_size", r.max_size},
              {"exact", r.exact},
              {"symmetry", "families are listed up to relabelling that puts {1..k} in the family"},
              {"family_count", r.families.size()},
              {"families", fams},
              {"nodes", r.nodes}};
}

inline Json checks_json(const std::vector<ReportCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

} // namespace deltasys
