#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "hypergraph.hpp"
#include "intersecting.hpp"
#include "search.hpp"

namespace deltasys {

/// All k-sets of [n] containing vertex 1.
inline Hypergraph build_star(int n, int k) {
  if (n < 1 || n > kMaxVertices || k < 2 || k > n) throw ParameterError("star needs 2 <= k <= n");
  std::vector<VertexSet> edges;
  for_each_combination(n - 1, k - 1, [&](std::span<const int> idx) {
    VertexSet e{1};
    for (int i : idx) e.push_back(i + 2);
    edges.push_back(std::move(e));
  });
  return Hypergraph(n, k, std::move(edges));
}

/// Simple 3-uniform design on n points with every pair in exactly lambda blocks.
struct DesignSpec {
  int n;
  int lambda;
};

inline void validate_design(const DesignSpec& spec) {
  const long long n = spec.n;
  const long long l = spec.lambda;
  if (n < 3 || n > kMaxVertices) throw AdmissibilityError("design needs 3 <= n <= " + std::to_string(kMaxVertices));
  if (l < 1) throw AdmissibilityError("lambda must be positive");
  if (l > n - 2) throw AdmissibilityError("lambda exceeds n - 2, so no simple design exists");
  if ((l * n * (n - 1)) % 6 != 0) throw AdmissibilityError("lambda*n*(n-1) is not divisible by 6");
  if ((l * (n - 1)) % 2 != 0) throw AdmissibilityError("lambda*(n-1) is odd");
}

namespace detail {

inline VertexMask triple_mask(int a, int b, int c) {
  VertexMask m;
  m.set(a - 1);
  m.set(b - 1);
  m.set(c - 1);
  return m;
}

/// Backtracking over pair deficits: always branch on the pair with the fewest
/// usable third points. A third point w that failed for pair uv is excluded
/// from uv's later siblings.
class TripleCover {
public:
  TripleCover(int n, int lambda, const std::unordered_set<VertexMask, MaskHash>& forbidden,
              const std::vector<int>& order, std::uint64_t budget)
      : n_(n), deficit_(static_cast<std::size_t>((n + 1) * (n + 1)), lambda), forbidden_(forbidden), order_(order),
        nodes_(budget) {
    for (int v = 0; v <= n; ++v) def(v, v) = 0;
    remaining_ = static_cast<long long>(lambda) * n * (n - 1) / 2;
  }

  std::optional<std::vector<VertexSet>> solve() {
    if (dfs()) return blocks_;
    return std::nullopt;
  }
  bool exhausted() const { return nodes_.exhausted(); }

private:
  int& def(int u, int v) { return deficit_[static_cast<std::size_t>(u * (n_ + 1) + v)]; }

  bool usable(int u, int v, int w) {
    if (w == u || w == v || def(u, w) == 0 || def(v, w) == 0) return false;
    const auto m = triple_mask(u, v, w);
    return !used_.contains(m) && !forbidden_.contains(m) && !excluded_.contains(m);
  }

  void apply(int u, int v, int w, int delta) {
    for (auto [x, y] : {std::pair{u, v}, std::pair{u, w}, std::pair{v, w}}) {
      def(x, y) -= delta;
      def(y, x) -= delta;
    }
    remaining_ -= 3 * delta;
  }

  bool dfs() {
    if (remaining_ == 0) return true;
    if (!nodes_.tick()) return false;
    int best_u = 0, best_v = 0, best_slack = n_ + 1;
    for (int u = 1; u <= n_ && best_slack > 0; ++u)
      for (int v = u + 1; v <= n_; ++v) {
        if (def(u, v) == 0) continue;
        int opts = 0;
        for (int w = 1; w <= n_; ++w) opts += usable(u, v, w);
        if (opts < def(u, v)) return false;
        if (opts - def(u, v) < best_slack) {
          best_u = u;
          best_v = v;
          best_slack = opts - def(u, v);
        }
      }
    const int u = best_u;
    const int v = best_v;
    std::vector<VertexMask> tried;
    bool ok = false;
    for (int w : order_) {
      if (!usable(u, v, w)) continue;
      const auto m = triple_mask(u, v, w);
      used_.insert(m);
      apply(u, v, w, 1);
      VertexSet block{u, v, w};
      std::sort(block.begin(), block.end());
      blocks_.push_back(block);
      if (dfs()) {
        ok = true;
        break;
      }
      blocks_.pop_back();
      apply(u, v, w, -1);
      used_.erase(m);
      if (nodes_.exhausted()) break;
      excluded_.insert(m);
      tried.push_back(m);
    }
    for (const auto& m : tried) excluded_.erase(m);
    return ok;
  }

  int n_;
  std::vector<int> deficit_;
  long long remaining_;
  const std::unordered_set<VertexMask, MaskHash>& forbidden_;
  std::vector<int> order_;
  NodeCounter nodes_;
  std::unordered_set<VertexMask, MaskHash> used_;
  std::unordered_set<VertexMask, MaskHash> excluded_;
  std::vector<VertexSet> blocks_;
};

/// Cyclic Steiner triple system on Z_n (points shifted to 1..n): base blocks
/// {0, x, y} whose differences cover each nonzero residue once, plus the short
/// orbit {0, n/3, 2n/3} when n = 3 mod 6. None exists for n = 9.
inline std::optional<std::vector<VertexSet>> cyclic_steiner(int n) {
  if (n % 6 != 1 && n % 6 != 3) return std::nullopt;
  std::vector<int> covered(static_cast<std::size_t>(n), 0);
  const auto mark = [&](int d, int delta) {
    covered[static_cast<std::size_t>(d % n)] += delta;
    covered[static_cast<std::size_t>((n - d % n) % n)] += delta;
  };
  if (n % 6 == 3) mark(n / 3, 1);
  const int base_count = (n - 1) / 6;
  std::vector<std::pair<int, int>> bases;

  const auto free_diff = [&](int d) { return d % n != 0 && covered[static_cast<std::size_t>(d % n)] == 0; };
  auto dfs = [&](auto&& self, int left) -> bool {
    if (left == 0) return true;
    int first = 1;
    while (first < n && covered[static_cast<std::size_t>(first)]) ++first;
    // the smallest uncovered difference must appear in the next base block as x or y - x or y
    for (int x = 1; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        const int d1 = x, d2 = y - x, d3 = y;
        const auto norm = [&](int d) { return std::min(d, n - d); };
        if (norm(d1) != first && norm(d2) != first && norm(d3) != first) continue;
        if (!free_diff(d1) || !free_diff(d2) || !free_diff(d3)) continue;
        if (norm(d1) == norm(d2) || norm(d1) == norm(d3) || norm(d2) == norm(d3)) continue;
        mark(d1, 1);
        mark(d2, 1);
        mark(d3, 1);
        bases.emplace_back(x, y);
        if (self(self, left - 1)) return true;
        bases.pop_back();
        mark(d1, -1);
        mark(d2, -1);
        mark(d3, -1);
      }
    return false;
  };
  if (!dfs(dfs, base_count)) return std::nullopt;

  std::vector<VertexSet> blocks;
  for (int shift = 0; shift < n; ++shift) {
    for (auto [x, y] : bases) blocks.push_back(make_vertex_set({shift + 1, (shift + x) % n + 1, (shift + y) % n + 1}));
    if (n % 6 == 3 && shift < n / 3)
      blocks.push_back(make_vertex_set({shift + 1, shift + n / 3 + 1, shift + 2 * n / 3 + 1}));
  }
  return blocks;
}

inline std::vector<int> seeded_order(int n, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  return order;
}

inline constexpr std::uint64_t kDesignNodeBudget = 20'000'000;

} // namespace detail

/// Builds a simple design for `spec`. Steiner systems (lambda = 1) with a
/// cyclic solution use it. Otherwise lambda pairwise disjoint Steiner systems
/// are stacked when n allows them, and the direct lambda-fold search runs last.
inline Hypergraph build_triple_system(const DesignSpec& spec, std::uint64_t seed = 0) {
  validate_design(spec);
  const int n = spec.n;
  const auto order = detail::seeded_order(n, seed);
  const std::unordered_set<VertexMask, MaskHash> none;

  if (spec.lambda == 1 && seed == 0)
    if (auto cyc = detail::cyclic_steiner(n)) return Hypergraph(n, 3, std::move(*cyc));

  if (n % 6 == 1 || n % 6 == 3) {
    std::unordered_set<VertexMask, MaskHash> used;
    std::vector<VertexSet> blocks;
    bool ok = true;
    for (int layer = 0; layer < spec.lambda && ok; ++layer) {
      detail::TripleCover cover(n, 1, used, order, detail::kDesignNodeBudget);
      auto sts = cover.solve();
      if (!sts) {
        ok = false;
        break;
      }
      for (auto& b : *sts) {
        used.insert(to_mask(b));
        blocks.push_back(std::move(b));
      }
    }
    if (ok) return Hypergraph(n, 3, std::move(blocks));
  }

  detail::TripleCover cover(n, spec.lambda, none, order, detail::kDesignNodeBudget);
  if (auto blocks = cover.solve()) return Hypergraph(n, 3, std::move(*blocks));
  throw SearchFailure("no simple design found for n=" + std::to_string(n) + ", lambda=" + std::to_string(spec.lambda) +
                      (cover.exhausted() ? " (search budget exhausted)" : ""));
}

/// Perfect matching of a 3-graph by exact backtracking, always covering the
/// smallest uncovered vertex with edges in lexicographic order.
inline std::optional<std::vector<VertexSet>> find_perfect_matching(const Hypergraph& h) {
  if (h.k() != 3) throw ParameterError("perfect matching search needs a 3-graph");
  if (h.n() % 3 != 0) throw ParameterError("n must be divisible by 3");
  std::vector<std::vector<EdgeIndex>> starting(static_cast<std::size_t>(h.n() + 1));
  for (EdgeIndex e = 0; e < h.size(); ++e)
    for (Vertex v : h.edge(e)) starting[static_cast<std::size_t>(v)].push_back(e);

  std::vector<VertexSet> chosen;
  auto dfs = [&](auto&& self, const VertexMask& covered) -> bool {
    int v = 1;
    while (v <= h.n() && covered.test(v - 1)) ++v;
    if (v > h.n()) return true;
    for (EdgeIndex e : starting[static_cast<std::size_t>(v)]) {
      if (h.mask(e).intersects(covered)) continue;
      chosen.push_back(h.edge(e));
      if (self(self, covered | h.mask(e))) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs(dfs, VertexMask{})) return chosen;
  return std::nullopt;
}

struct ReportCheck {
  std::string name;
  std::string verdict; // pass | fail | inconclusive
  std::string detail;
  std::string claim;
  std::vector<VertexSet> witness;
};

enum class VerifyMode { degree, exhaustive, both };

inline std::string to_string(VerifyMode m) {
  switch (m) {
  case VerifyMode::degree: return "degree-argument";
  case VerifyMode::exhaustive: return "exhaustive";
  case VerifyMode::both: return "both";
  }
  return "unknown";
}

inline std::optional<VerifyMode> verify_mode_from_string(std::string_view s) {
  if (s == "degree-argument" || s == "degree") return VerifyMode::degree;
  if (s == "exhaustive") return VerifyMode::exhaustive;
  if (s == "both") return VerifyMode::both;
  return std::nullopt;
}

struct ConstructionReport {
  int n = 0;
  int m = 0;
  std::size_t design_edges = 0;
  std::size_t matching_edges = 0;
  std::size_t total_edges = 0;
  std::map<int, std::size_t> codegree_histogram; // codegree -> number of pairs
  int max_codegree = 0;
  bool triangle_decomposition = false;
  std::vector<VertexSet> heavy_triangles;
  std::vector<ReportCheck> checks;
  std::optional<SearchStatus> exhaustive_status;
  std::uint64_t exhaustive_nodes = 0;
  std::string verdict; // verified | conditional | refuted | inconclusive

  const ReportCheck* check(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline constexpr const char* kConditionalNote =
    "conditional on the classification of intersecting 3-graphs with at least 11 edges";

namespace detail {

inline ReportCheck make_check(std::string name, bool ok, std::string detail, std::string claim) {
  return ReportCheck{std::move(name), ok ? "pass" : "fail", std::move(detail), std::move(claim), {}};
}

/// Pairs of codegree m must form n/3 vertex-disjoint triangles covering [n].
inline std::optional<std::vector<VertexSet>> heavy_triangles(const std::vector<std::vector<int>>& cod, int n, int m) {
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n + 1));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v && cod[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == m)
        nb[static_cast<std::size_t>(u)].push_back(v);
  std::set<VertexSet> triangles;
  for (int u = 1; u <= n; ++u) {
    const auto& a = nb[static_cast<std::size_t>(u)];
    if (a.size() != 2) return std::nullopt;
    const int x = a[0], y = a[1];
    const auto& bx = nb[static_cast<std::size_t>(x)];
    if (std::find(bx.begin(), bx.end(), y) == bx.end()) return std::nullopt;
    triangles.insert(make_vertex_set({u, x, y}));
  }
  if (triangles.size() * 3 != static_cast<std::size_t>(n)) return std::nullopt;
  return std::vector<VertexSet>(triangles.begin(), triangles.end());
}

inline int degree_threshold(int m) {
  return static_cast<int>(std::min({ceil_div(3LL * m + 1, 3), ceil_div(3LL * m - 2, 2), 3LL * m - 5}));
}

inline void settle_verdict(ConstructionReport& r) {
  bool any_fail = false;
  for (const auto& c : r.checks) any_fail |= c.verdict == "fail";
  if (any_fail) {
    r.verdict = "refuted";
  } else if (r.exhaustive_status == SearchStatus::none) {
    r.verdict = "verified";
  } else if (r.check("max-codegree") && r.check("heavy-pairs-triangles") && r.check("degree-threshold")) {
    r.verdict = "conditional";
  } else {
    r.verdict = "inconclusive";
  }
}

} // namespace detail

/// Checks that s_hat has no non-trivial intersecting subfamily of size 3m+1,
/// by the codegree argument, by exhaustive search, or both.
inline ConstructionReport verify_counterexample(const Hypergraph& s_hat, int m, VerifyMode mode,
                                                const SearchOptions& opts = {}, ConstructionReport report = {}) {
  if (s_hat.k() != 3) throw ParameterError("counterexample verification needs a 3-graph");
  if (m < 2) throw ParameterError("m must be at least 2");
  const int n = s_hat.n();
  report.n = n;
  report.m = m;
  report.total_edges = s_hat.size();

  const auto cod = pair_codegrees(s_hat);
  report.codegree_histogram.clear();
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) ++report.codegree_histogram[cod[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]];
  report.max_codegree = report.codegree_histogram.empty() ? 0 : report.codegree_histogram.rbegin()->first;
  auto tri = detail::heavy_triangles(cod, n, m);
  report.triangle_decomposition = tri.has_value();
  report.heavy_triangles = tri.value_or(std::vector<VertexSet>{});

  if (mode != VerifyMode::exhaustive) {
    report.checks.push_back(detail::make_check("max-codegree", report.max_codegree == m,
                                               "max pair codegree " + std::to_string(report.max_codegree) +
                                                   ", expected " + std::to_string(m),
                                               "the maximum pair codegree equals m"));
    auto c = detail::make_check("heavy-pairs-triangles", tri.has_value(),
                                tri ? std::to_string(tri->size()) + " disjoint triangles cover all vertices"
                                    : "pairs of codegree m do not form n/3 disjoint triangles",
                                "pairs of codegree m form n/3 vertex-disjoint triangles");
    if (tri) c.witness = *tri;
    report.checks.push_back(std::move(c));
    const int thr = detail::degree_threshold(m);
    report.checks.push_back(detail::make_check(
        "degree-threshold", thr > m, "min codegree forced by a large non-trivial intersecting family is " +
                                         std::to_string(thr) + " vs m = " + std::to_string(m),
        "each template family of 3m+1 edges forces a pair of codegree above m; " + std::string(kConditionalNote)));
  }

  if (mode != VerifyMode::degree) {
    const int t = 3 * m + 1;
    auto out = find_nontrivial_subfamily(s_hat, t, 2, opts);
    report.exhaustive_status = out.status;
    report.exhaustive_nodes = out.nodes;
    ReportCheck c{"exhaustive-search", "", "", "no non-trivial intersecting subfamily of size 3m+1", {}};
    switch (out.status) {
    case SearchStatus::none:
      c.verdict = "pass";
      c.detail = "search completed after " + std::to_string(out.nodes) + " nodes";
      break;
    case SearchStatus::found:
      c.verdict = "fail";
      c.detail = "found a non-trivial intersecting subfamily of size " + std::to_string(t);
      c.witness = out.witness->edges;
      break;
    case SearchStatus::budget_exhausted:
      c.verdict = "inconclusive";
      c.detail = "node budget of " + std::to_string(opts.node_budget) + " exhausted";
      break;
    }
    report.checks.push_back(std::move(c));
  }
  detail::settle_verdict(report);
  return report;
}

struct Counterexample {
  Hypergraph s_hat;
  ConstructionReport report;
};

/// S_hat = S ∪ M, where S is a simple design with pair multiplicity m-1 and M a
/// perfect matching of the complement of S.
inline Counterexample build_counterexample(int n, int m, std::uint64_t seed = 0) {
  if (m < 4) throw ParameterError("m must be at least 4");
  if (n % 3 != 0) throw ParameterError("n must be divisible by 3");
  const DesignSpec spec{n, m - 1};
  validate_design(spec);
  const Hypergraph s = build_triple_system(spec, seed);
  const Hypergraph comp = complement(s);
  auto matching = find_perfect_matching(comp);
  if (!matching) throw SearchFailure("the complement of the design has no perfect matching");

  std::vector<VertexSet> all = s.edges();
  all.insert(all.end(), matching->begin(), matching->end());
  Counterexample out{Hypergraph(n, 3, std::move(all)), {}};
  auto& r = out.report;
  r.n = n;
  r.m = m;
  r.design_edges = s.size();
  r.matching_edges = matching->size();
  r.total_edges = out.s_hat.size();

  const long long expected = static_cast<long long>(m - 1) * n * (n - 1) / 6 + n / 3;
  r.checks.push_back(detail::make_check("size-formula", static_cast<long long>(r.total_edges) == expected,
                                        std::to_string(r.total_edges) + " edges, formula gives " +
                                            std::to_string(expected),
                                        "|S_hat| = (m-1)/3 * C(n,2) + n/3"));

  const auto sc = pair_codegrees(s);
  const auto cc = pair_codegrees(comp);
  bool design_ok = true;
  bool comp_ok = true;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      design_ok &= sc[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == m - 1;
      comp_ok &= cc[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == n - m - 1;
    }
  r.checks.push_back(detail::make_check("design-codegree", design_ok, "every pair checked",
                                        "every pair lies in exactly m-1 design triples"));
  r.checks.push_back(detail::make_check("complement-codegree", comp_ok, "every pair checked",
                                        "every pair lies in exactly n-m-1 triples of the complement"));

  bool disjoint = true;
  for (std::size_t i = 0; i < matching->size(); ++i) {
    disjoint &= !s.contains((*matching)[i]);
    for (std::size_t j = i + 1; j < matching->size(); ++j)
      disjoint &= !to_mask((*matching)[i]).intersects(to_mask((*matching)[j]));
  }
  auto mc = detail::make_check("matching-disjoint", disjoint && matching->size() * 3 == static_cast<std::size_t>(n),
                               std::to_string(matching->size()) + " matching edges",
                               "the matching has n/3 pairwise disjoint edges outside the design");
  mc.witness = *matching;
  r.checks.push_back(std::move(mc));
  detail::settle_verdict(r);
  return out;
}

} // namespace deltasys
