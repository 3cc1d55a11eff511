#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "delta_systems.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "hypergraph.hpp"
#include "intersecting.hpp"
#include "intersection.hpp"
#include "io.hpp"
#include "report.hpp"
#include "search.hpp"

namespace deltasys {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitBudget = 2, kExitInput = 3 };

struct RunConfig {
  std::string command;
  std::string input;  // hypergraph text file
  std::string output; // where builders write the hypergraph text
  std::string witness; // JSON witness file (complete-semi)
  std::uint64_t seed = 0;
  std::uint64_t budget = default_node_budget();
  unsigned threads = 1;

  int n = 0;
  int k = 0;
  int m = 0;
  int lambda = 0;
  int i = 1;       // shadow index
  int s = 2;       // sunflower size
  int size = 0;    // subfamily size t
  int wise = 2;    // d for d-wise intersection
  int d = 0;
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> center;
  std::string mode = "both";
  std::string config; // extremal: nontrivial:t,d | avd:a1,a2,...;d | simplex:d
  std::string epsilon = "0";
  std::string delta = "0";
  unsigned restarts = 16;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "shadow",          "weight-check",         "find-sunflower",        "find-avd",
      "complete-semi",   "find-nontrivial",      "check-intersecting",    "classify-km",
      "build-steiner",   "build-counterexample", "verify-counterexample", "extremal",
      "stability-scan",  "homogeneous-extract"};
  return names;
}

namespace detail {

struct Outcome {
  int code = kExitOk;
  std::string status;
  Json params = Json::object();
  Json result = Json::object();
  std::vector<ReportCheck> checks;
  std::string summary;
};

inline std::string read_file(const std::string& path) {
  if (path.empty()) throw ParameterError("--input is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Hypergraph load_input(const RunConfig& c) { return parse_hypergraph(read_file(c.input)); }

inline void write_output(const RunConfig& c, const Hypergraph& h) {
  if (c.output.empty()) return;
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + c.output);
  out << serialize_hypergraph(h);
}

inline Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw ParameterError(std::string("cannot parse ") + what + " '" + text + "' as a rational");
  }
}

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::string cur;
  for (char ch : std::string(text) + ",") {
    if (ch == ',') {
      if (cur.empty()) throw ParameterError("malformed integer list '" + std::string(text) + "'");
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(cur, &used));
        if (used != cur.size()) throw std::invalid_argument(cur);
      } catch (const std::exception&) {
        throw ParameterError("malformed integer list '" + std::string(text) + "'");
      }
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  return out;
}

inline ForbiddenConfig parse_config(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("config must look like kind:params");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "nontrivial") {
    const auto v = parse_int_list(rest);
    if (v.size() != 2) throw ParameterError("nontrivial config is nontrivial:t,d");
    return NontrivialConfig{v[0], v[1]};
  }
  if (kind == "simplex") {
    const auto v = parse_int_list(rest);
    if (v.size() != 1) throw ParameterError("simplex config is simplex:d");
    return SimplexConfig{v[0]};
  }
  if (kind == "avd") {
    const auto semi = rest.find(';');
    if (semi == std::string::npos) throw ParameterError("avd config is avd:a1,a2,...;d");
    const auto d = parse_int_list(rest.substr(semi + 1));
    if (d.size() != 1) throw ParameterError("avd config is avd:a1,a2,...;d");
    return AvdConfig{parse_int_list(rest.substr(0, semi)), d[0]};
  }
  throw ParameterError("unknown config kind '" + kind + "'");
}

inline int search_code(SearchStatus s) {
  switch (s) {
  case SearchStatus::found: return kExitOk;
  case SearchStatus::none: return kExitNegative;
  case SearchStatus::budget_exhausted: return kExitBudget;
  }
  return kExitNegative;
}

inline SearchOptions search_options(const RunConfig& c) {
  if (c.budget == 0) throw ParameterError("budget must be positive");
  return SearchOptions{c.budget, c.threads};
}

inline Json graph_info(const Hypergraph& h) { return Json{{"n", h.n()}, {"k", h.k()}, {"edges", h.size()}}; }

// ---------------------------------------------------------------------------

inline Outcome cmd_shadow(const RunConfig& c) {
  const auto h = load_input(c);
  const auto sets = shadow(h, c.i);
  Outcome o;
  o.params = Json{{"i", c.i}, {"graph", graph_info(h)}};
  o.status = "ok";
  o.result = Json{{"size", sets.size()}, {"sets", to_json(sets)}};
  o.summary = "shadow " + std::to_string(c.i) + " has " + std::to_string(sets.size()) + " sets";
  return o;
}

inline Outcome cmd_weight_check(const RunConfig& c) {
  const auto h = load_input(c);
  const auto w = edge_weights(h);
  Rational total = 0;
  Json per_edge = Json::array();
  for (std::size_t e = 0; e < h.size(); ++e) {
    total += w[e];
    per_edge.push_back(Json{{"edge", to_json(h.edge(e))}, {"weight", to_json(w[e])}});
  }
  const auto shadow_size = shadow(h, 1).size();
  const bool ok = total == Rational(static_cast<long long>(shadow_size));
  Outcome o;
  o.params = Json{{"graph", graph_info(h)}};
  o.status = ok ? "verified" : "refuted";
  o.code = ok ? kExitOk : kExitNegative;
  o.result = Json{{"weights", per_edge}, {"total", to_json(total)}, {"shadow_size", shadow_size}};
  o.checks.push_back(detail::make_check("weight-sum", ok, "sum " + total.str() + " vs " + std::to_string(shadow_size),
                                        "the edge weights sum to the size of the first shadow"));
  o.summary = "total weight " + total.str() + ", shadow size " + std::to_string(shadow_size);
  return o;
}

inline Outcome cmd_find_sunflower(const RunConfig& c) {
  const auto h = load_input(c);
  const auto center = make_vertex_set(c.center);
  auto w = find_sunflower(h, center, c.s);
  Outcome o;
  o.params = Json{{"center", to_json(center)}, {"s", c.s}, {"graph", graph_info(h)}};
  o.status = w ? "found" : "none";
  o.code = w ? kExitOk : kExitNegative;
  if (w) {
    const bool valid = static_cast<bool>(is_sunflower(w->petals));
    o.result = Json{{"witness", to_json(*w)}};
    auto chk = detail::make_check("witness-valid", valid, "", "the petals pairwise meet exactly in the center");
    chk.witness = w->petals;
    o.checks.push_back(std::move(chk));
  }
  o.summary = "sunflower with center " + to_string(center) + ": " + o.status;
  return o;
}

inline Outcome cmd_find_avd(const RunConfig& c) {
  const auto h = load_input(c);
  auto r = find_avd_system(h, c.a, c.d, search_options(c));
  Outcome o;
  o.params = Json{{"a", c.a}, {"d", c.d}, {"budget", c.budget}, {"graph", graph_info(h)}};
  o.status = to_string(r.status);
  o.code = search_code(r.status);
  o.result = Json{{"nodes", r.nodes}};
  if (r.witness) {
    o.result["witness"] = to_json(*r.witness);
    const auto v = is_avd(*r.witness, c.d);
    auto chk = detail::make_check("witness-valid", static_cast<bool>(v), v.detail, "the witness is an (a,d)-system");
    chk.witness = r.witness->edges();
    o.checks.push_back(std::move(chk));
  }
  o.summary = "(a,d)-system search: " + o.status + " after " + std::to_string(r.nodes) + " nodes";
  return o;
}

inline Outcome cmd_complete_semi(const RunConfig& c) {
  Json input;
  try {
    input = Json::parse(read_file(c.witness));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("witness is not valid JSON: ") + e.what());
  }
  const auto semi = avd_from_json(input);
  const auto full = complete_semi(semi, c.b);
  const auto v = is_avd(full, full.d());
  Outcome o;
  o.params = Json{{"b", c.b}, {"semi", to_json(semi)}};
  o.status = v ? "found" : "refuted";
  o.code = v ? kExitOk : kExitNegative;
  o.result = Json{{"witness", to_json(full)}};
  auto chk = detail::make_check("completion-valid", static_cast<bool>(v), v.detail,
                                "the completed system has pairwise disjoint residues");
  chk.witness = full.edges();
  o.checks.push_back(std::move(chk));
  o.summary = "completed semi system: " + o.status;
  return o;
}

inline Outcome cmd_find_nontrivial(const RunConfig& c) {
  const auto h = load_input(c);
  auto r = find_nontrivial_subfamily(h, c.size, c.wise, search_options(c));
  Outcome o;
  o.params = Json{{"size", c.size}, {"wise", c.wise}, {"budget", c.budget}, {"graph", graph_info(h)}};
  o.status = to_string(r.status);
  o.code = search_code(r.status);
  o.result = Json{{"nodes", r.nodes}};
  if (r.witness) {
    o.result["witness"] = to_json(*r.witness);
    const bool valid = static_cast<bool>(is_nontrivial(r.witness->edges, c.wise));
    auto chk = detail::make_check("witness-valid", valid, "", "the witness is non-trivially d-wise intersecting");
    chk.witness = r.witness->edges;
    o.checks.push_back(std::move(chk));
  }
  o.summary = "non-trivial subfamily search: " + o.status + " after " + std::to_string(r.nodes) + " nodes";
  return o;
}

inline Outcome cmd_check_intersecting(const RunConfig& c) {
  const auto h = load_input(c);
  const bool dwise = is_dwise_intersecting(h.edges(), c.wise);
  const auto nt = is_nontrivial(h.edges(), c.wise);
  Outcome o;
  o.params = Json{{"wise", c.wise}, {"graph", graph_info(h)}};
  o.status = dwise ? "verified" : "refuted";
  o.code = dwise ? kExitOk : kExitNegative;
  o.result = Json{{"dwise_intersecting", dwise}, {"nontrivial", static_cast<bool>(nt)}};
  if (!nt.disjoint_tuple.empty()) {
    std::vector<VertexSet> tuple;
    for (auto i : nt.disjoint_tuple) tuple.push_back(h.edge(i));
    o.result["disjoint_tuple"] = to_json(tuple);
  }
  if (!nt.common.empty()) o.result["common_vertices"] = to_json(nt.common);
  o.summary = std::string(dwise ? "" : "not ") + std::to_string(c.wise) + "-wise intersecting" +
              (nt ? ", non-trivial" : "");
  return o;
}

inline Outcome cmd_classify_km(const RunConfig& c) {
  const auto h = load_input(c);
  Outcome o;
  o.params = Json{{"graph", graph_info(h)}};
  try {
    const auto fam = classify_intersecting(h);
    o.status = "found";
    o.result = Json{{"family", to_json(fam)}, {"max_codegree", max_codegree2(h)}};
    bool contained = true;
    for (const auto& e : h.edges()) contained &= km_contains(fam, e);
    o.checks.push_back(detail::make_check("containment", contained, "",
                                          "every edge lies in the relabelled template"));
    if (fam.tag != KMTag::EKR && fam.tag != KMTag::H1) {
      const bool ok = check_km_codegree_bounds(h, fam);
      o.checks.push_back(detail::make_check(
          "codegree-bound", ok,
          "max codegree " + std::to_string(max_codegree2(h)) + ", bound " +
              std::to_string(km_codegree_bound(fam.tag, static_cast<long long>(h.size()))),
          "a family inside this template has a pair of at least the stated codegree"));
      o.code = ok ? kExitOk : kExitNegative;
    }
    o.summary = "classified as " + to_string(fam.tag);
  } catch (const ClassificationError& e) {
    o.status = "unclassified";
    o.code = kExitNegative;
    o.result = Json{{"dump", e.what()}};
    o.summary = e.what();
  }
  return o;
}

inline Outcome cmd_build_steiner(const RunConfig& c) {
  const DesignSpec spec{c.n, c.lambda};
  const auto h = build_triple_system(spec, c.seed);
  write_output(c, h);
  const auto cod = pair_codegrees(h);
  bool exact = true;
  for (int u = 1; u <= h.n(); ++u)
    for (int v = u + 1; v <= h.n(); ++v) exact &= cod[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == c.lambda;
  Outcome o;
  o.params = Json{{"n", c.n}, {"lambda", c.lambda}, {"seed", c.seed}};
  o.status = exact ? "found" : "refuted";
  o.code = exact ? kExitOk : kExitNegative;
  o.result = Json{{"blocks", h.size()}, {"edges", to_json(h.edges())}};
  o.checks.push_back(detail::make_check("pair-codegree", exact, "every pair checked",
                                        "every pair lies in exactly lambda blocks"));
  o.summary = "design with " + std::to_string(h.size()) + " blocks";
  return o;
}

inline Outcome construction_outcome(const ConstructionReport& r, const Hypergraph& h) {
  Outcome o;
  o.result = to_json(r);
  o.result["edges"] = to_json(h.edges());
  o.checks = r.checks;
  o.status = r.verdict;
  if (r.verdict == "refuted") o.code = kExitNegative;
  else if (r.exhaustive_status == SearchStatus::budget_exhausted) o.code = kExitBudget;
  else if (r.verdict == "inconclusive") o.code = kExitBudget;
  else o.code = kExitOk;
  o.summary = "counterexample with " + std::to_string(r.total_edges) + " edges: " + r.verdict;
  if (r.verdict == "conditional") o.summary += " (" + std::string(kConditionalNote) + ")";
  return o;
}

inline Outcome cmd_build_counterexample(const RunConfig& c) {
  auto ce = build_counterexample(c.n, c.m, c.seed);
  write_output(c, ce.s_hat);
  auto o = construction_outcome(ce.report, ce.s_hat);
  o.params = Json{{"n", c.n}, {"m", c.m}, {"seed", c.seed}};
  return o;
}

inline Outcome cmd_verify_counterexample(const RunConfig& c) {
  const auto mode = verify_mode_from_string(c.mode);
  if (!mode) throw ParameterError("mode must be degree-argument, exhaustive or both");
  Outcome o;
  if (!c.input.empty()) {
    if (c.m < 1) throw ParameterError("--m is required");
    const auto h = load_input(c);
    auto r = verify_counterexample(h, c.m, *mode, search_options(c));
    o = construction_outcome(r, h);
    o.params = Json{{"m", c.m}, {"mode", to_string(*mode)}, {"budget", c.budget}, {"graph", graph_info(h)}};
  } else {
    auto ce = build_counterexample(c.n, c.m, c.seed);
    write_output(c, ce.s_hat);
    auto r = verify_counterexample(ce.s_hat, c.m, *mode, search_options(c), ce.report);
    o = construction_outcome(r, ce.s_hat);
    o.params = Json{{"n", c.n}, {"m", c.m}, {"seed", c.seed}, {"mode", to_string(*mode)}, {"budget", c.budget}};
  }
  return o;
}

inline Outcome cmd_extremal(const RunConfig& c) {
  const auto cfg = parse_config(c.config);
  auto r = max_avoiding(c.n, c.k, cfg, search_options(c));
  Outcome o;
  o.params = Json{{"n", c.n}, {"k", c.k}, {"config", to_string(cfg)}, {"budget", c.budget}};
  o.status = r.exact ? "exact" : "budget-exhausted";
  o.code = r.exact ? kExitOk : kExitBudget;
  o.result = to_json(r);
  const auto star = binomial(c.n - 1, c.k - 1);
  std::size_t stars = 0;
  for (const auto& f : r.families) {
    const Hypergraph h(c.n, c.k, f);
    for (Vertex v = 1; v <= c.n; ++v)
      if (degree(h, v) == h.size()) {
        ++stars;
        break;
      }
  }
  o.result["star_size"] = star;
  o.result["star_families"] = stars;
  o.summary = "maximum " + std::to_string(r.max_size) + " (star size " + std::to_string(star) + "), " +
              std::to_string(r.families.size()) + " extremal families";
  return o;
}

inline Outcome cmd_stability_scan(const RunConfig& c) {
  const auto h = load_input(c);
  const auto eps = parse_rational(c.epsilon, "epsilon");
  const auto del = parse_rational(c.delta, "delta");
  const auto r = stability_scan(h, eps, del);
  Outcome o;
  o.params = Json{{"epsilon", eps.str()}, {"delta", del.str()}, {"graph", graph_info(h)}};
  o.status = r.within ? "verified" : "refuted";
  o.code = r.within ? kExitOk : kExitNegative;
  o.result = Json{{"vertex", r.vertex}, {"miss", r.miss}, {"allowance", to_json(r.allowance)}, {"within", r.within}};
  o.summary = "vertex " + std::to_string(r.vertex) + " misses " + std::to_string(r.miss) + " edges";
  return o;
}

inline Outcome cmd_homogeneous_extract(const RunConfig& c) {
  const auto h = load_input(c);
  const auto cert = extract_homogeneous(h, c.s, ExtractOptions{c.seed, c.restarts, c.threads});
  const auto valid = is_homogeneous(cert.subgraph, cert.s, cert.partition);
  const int r = rank(cert.pattern);
  const std::size_t bound =
      r == 0 ? 1 : shadow(cert.subgraph, cert.subgraph.k() - r).size();
  Outcome o;
  o.params = Json{{"s", c.s}, {"seed", c.seed}, {"restarts", c.restarts}, {"graph", graph_info(h)}};
  o.status = valid ? "found" : "refuted";
  o.code = valid ? kExitOk : kExitNegative;
  o.result = Json{{"size", cert.subgraph.size()}, {"certificate", to_json(cert)}};
  o.checks.push_back(detail::make_check("certificate-valid", static_cast<bool>(valid),
                                        valid ? "" : valid.failure->detail, "all four homogeneity conditions hold"));
  o.checks.push_back(detail::make_check("rank-shadow-bound", cert.subgraph.size() <= bound,
                                        std::to_string(cert.subgraph.size()) + " <= " + std::to_string(bound),
                                        "the subgraph is no larger than its (k - rank)-th shadow"));
  for (const auto& chk : o.checks)
    if (chk.verdict == "fail") o.code = kExitNegative;
  o.summary = "homogeneous subgraph with " + std::to_string(cert.subgraph.size()) + " edges, rank " + std::to_string(r);
  return o;
}

inline const std::map<std::string, std::function<Outcome(const RunConfig&)>>& dispatch_table() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table{
      {"shadow", cmd_shadow},
      {"weight-check", cmd_weight_check},
      {"find-sunflower", cmd_find_sunflower},
      {"find-avd", cmd_find_avd},
      {"complete-semi", cmd_complete_semi},
      {"find-nontrivial", cmd_find_nontrivial},
      {"check-intersecting", cmd_check_intersecting},
      {"classify-km", cmd_classify_km},
      {"build-steiner", cmd_build_steiner},
      {"build-counterexample", cmd_build_counterexample},
      {"verify-counterexample", cmd_verify_counterexample},
      {"extremal", cmd_extremal},
      {"stability-scan", cmd_stability_scan},
      {"homogeneous-extract", cmd_homogeneous_extract},
  };
  return table;
}

} // namespace detail

/// Runs one command, writes the JSON report to `out` and a short summary to
/// `err`, and returns the exit code: 0 verified or found, 1 refuted or none,
/// 2 budget exhausted, 3 input error.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Json report{{"schema", kReportSchema}, {"command", config.command}};
  int code = kExitOk;
  try {
    const auto& table = detail::dispatch_table();
    const auto it = table.find(config.command);
    if (it == table.end()) throw ParameterError("unknown command '" + config.command + "'");
    auto o = it->second(config);
    report["params"] = o.params;
    report["status"] = o.status;
    report["result"] = o.result;
    report["checks"] = checks_json(o.checks);
    code = o.code;
    err << config.command << ": " << o.summary << '\n';
    for (const auto& c : o.checks) err << "  " << c.verdict << "  " << c.name << '\n';
  } catch (const ParseError& e) {
    report["status"] = "input-error";
    report["error"] = e.what();
    code = kExitInput;
    err << config.command << ": input error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) { // ParameterError and its subclasses
    report["status"] = "input-error";
    report["error"] = e.what();
    code = kExitInput;
    err << config.command << ": input error: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    report["status"] = "input-error";
    report["error"] = e.what();
    code = kExitInput;
    err << config.command << ": precondition violated: " << e.what() << '\n';
  } catch (const SearchFailure& e) {
    report["status"] = "failed";
    report["error"] = e.what();
    code = kExitNegative;
    err << config.command << ": " << e.what() << '\n';
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["timing_ms"] = ms;
  out << report.dump(2) << '\n';
  return code;
}

} // namespace deltasys
