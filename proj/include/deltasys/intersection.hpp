#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "delta_systems.hpp"
#include "errors.hpp"
#include "hypergraph.hpp"
#include "search.hpp"

namespace deltasys {

/// Subset of the coordinates {1..k}; bit i - 1 stands for coordinate i.
using PatternSet = std::uint32_t;

inline constexpr int kMaxPatternWidth = 31;

inline std::vector<int> pattern_indices(PatternSet a) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if ((a >> i) & 1U) out.push_back(i + 1);
  return out;
}

inline PatternSet pattern_from_indices(std::span<const int> idx) {
  PatternSet a = 0;
  for (int i : idx) a |= PatternSet{1} << (i - 1);
  return a;
}

/// Canonical order on coordinate sets: lexicographic on their sorted index lists.
inline bool pattern_set_less(PatternSet a, PatternSet b) {
  while (a && b) {
    const int x = std::countr_zero(a);
    const int y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return b != 0;
}

/// Canonical order on families sorted by pattern_set_less.
inline bool pattern_family_less(const std::vector<PatternSet>& a, const std::vector<PatternSet>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), pattern_set_less);
}

/// A family of proper subsets of {1..k}; the empty set may be a member.
class IntersectionPattern {
public:
  IntersectionPattern() = default;

  IntersectionPattern(int k, std::vector<PatternSet> sets) : k_(k), sets_(std::move(sets)) {
    if (k < 1 || k > kMaxPatternWidth) throw ParameterError("pattern width must lie in [1, 31]");
    const PatternSet full = full_set();
    for (PatternSet a : sets_) {
      if (a & ~full) throw ParameterError("pattern member leaves {1..k}");
      if (a == full) throw ParameterError("pattern may not contain {1..k}");
    }
    std::sort(sets_.begin(), sets_.end(), pattern_set_less);
    if (std::adjacent_find(sets_.begin(), sets_.end()) != sets_.end())
      throw ParameterError("pattern members must be distinct");
  }

  static IntersectionPattern from_lists(int k, const std::vector<std::vector<int>>& lists) {
    std::vector<PatternSet> sets;
    for (const auto& l : lists) {
      for (int i : l)
        if (i < 1 || i > k) throw ParameterError("pattern index outside {1..k}");
      sets.push_back(pattern_from_indices(l));
    }
    return IntersectionPattern(k, std::move(sets));
  }

  int k() const noexcept { return k_; }
  const std::vector<PatternSet>& sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  PatternSet full_set() const noexcept { return (PatternSet{1} << k_) - 1; }

  bool contains(PatternSet a) const { return std::find(sets_.begin(), sets_.end(), a) != sets_.end(); }

  /// First pair (A, B) in canonical order with A ∩ B outside the family.
  std::optional<std::pair<PatternSet, PatternSet>> closure_violation() const {
    for (PatternSet a : sets_)
      for (PatternSet b : sets_)
        if (!contains(a & b)) return std::pair{a, b};
    return std::nullopt;
  }
  bool closed_under_intersection() const { return !closure_violation().has_value(); }

  std::vector<std::vector<int>> as_lists() const {
    std::vector<std::vector<int>> out;
    for (PatternSet a : sets_) out.push_back(pattern_indices(a));
    return out;
  }

  friend bool operator==(const IntersectionPattern&, const IntersectionPattern&) = default;

private:
  int k_ = 1;
  std::vector<PatternSet> sets_;
};

/// Smallest |A| over A ⊆ {1..k} with A outside J and below no member of J.
/// {1..k} always qualifies, so the result lies in [0, k].
inline int rank(const IntersectionPattern& j) {
  const int k = j.k();
  for (int r = 0; r <= k; ++r) {
    bool hit = false;
    for_each_combination(k, r, [&](std::span<const int> idx) {
      PatternSet a = 0;
      for (int i : idx) a |= PatternSet{1} << i;
      if (j.contains(a)) return true;
      for (PatternSet b : j.sets())
        if ((a & ~b) == 0) return true;
      hit = true;
      return false;
    });
    if (hit) return r;
  }
  return k;
}

/// Ordered partition of [n] into blocks (possibly empty).
class VertexPartition {
public:
  VertexPartition(int n, std::vector<VertexSet> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n < 1 || n > kMaxVertices) throw ParameterError("vertex count out of range");
    part_of_.assign(static_cast<std::size_t>(n + 1), -1);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      auto& block = blocks_[b];
      std::sort(block.begin(), block.end());
      for (Vertex v : block) {
        if (v < 1 || v > n) throw ParameterError("partition vertex " + std::to_string(v) + " outside [n]");
        if (part_of_[static_cast<std::size_t>(v)] != -1)
          throw ParameterError("vertex " + std::to_string(v) + " lies in two blocks");
        part_of_[static_cast<std::size_t>(v)] = static_cast<int>(b);
      }
    }
    for (Vertex v = 1; v <= n; ++v)
      if (part_of_[static_cast<std::size_t>(v)] == -1)
        throw ParameterError("vertex " + std::to_string(v) + " is in no block");
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
  /// 0-based block index of v.
  int part_of(Vertex v) const { return part_of_[static_cast<std::size_t>(v)]; }

private:
  int n_;
  std::vector<VertexSet> blocks_;
  std::vector<int> part_of_;
};

/// Indices of the blocks that s meets.
inline PatternSet project(std::span<const Vertex> s, const VertexPartition& parts) {
  if (parts.size() > static_cast<std::size_t>(kMaxPatternWidth)) throw ParameterError("too many blocks");
  PatternSet out = 0;
  for (Vertex v : s) {
    if (v < 1 || v > parts.n()) throw ParameterError("vertex " + std::to_string(v) + " outside [n]");
    out |= PatternSet{1} << parts.part_of(v);
  }
  return out;
}

namespace detail {

inline PatternSet project_mask(const VertexMask& m, const VertexPartition& parts) {
  PatternSet out = 0;
  m.for_each([&](int bit) { out |= PatternSet{1} << parts.part_of(bit + 1); });
  return out;
}

/// Distinct intersections of edge e with the other listed edges.
inline std::vector<VertexMask> structure_masks(const std::vector<VertexMask>& masks, std::size_t e) {
  std::vector<VertexMask> out;
  for (std::size_t f = 0; f < masks.size(); ++f)
    if (f != e) out.push_back(masks[e] & masks[f]);
  std::sort(out.begin(), out.end(),
            [](const VertexMask& a, const VertexMask& b) { return to_vertex_set(a) < to_vertex_set(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<PatternSet> projected_structure(const std::vector<VertexMask>& masks, std::size_t e,
                                                   const VertexPartition& parts) {
  std::vector<PatternSet> out;
  for (std::size_t f = 0; f < masks.size(); ++f)
    if (f != e) out.push_back(project_mask(masks[e] & masks[f], parts));
  std::sort(out.begin(), out.end(), pattern_set_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace detail

/// { E ∩ E' : E' in H, E' != E }, lexicographically sorted.
inline std::vector<VertexSet> intersection_structure(const VertexSet& edge, const Hypergraph& h) {
  const auto idx = h.find(make_vertex_set(edge));
  if (!idx) throw ParameterError("edge " + to_string(edge) + " is not in the hypergraph");
  std::vector<VertexSet> out;
  for (const auto& m : detail::structure_masks(h.masks(), *idx)) out.push_back(to_vertex_set(m));
  return out;
}

/// Sunflower through one edge of the subgraph, referenced by edge indices.
struct SunflowerRef {
  VertexSet center;
  std::vector<EdgeIndex> petals;
};

struct HomogeneousCertificate {
  Hypergraph subgraph;
  VertexPartition partition;
  IntersectionPattern pattern;
  int s;
  /// witnesses[e] lists, for each set of e's intersection structure (in
  /// lexicographic order), an s-sunflower through e with that center.
  std::vector<std::vector<SunflowerRef>> witnesses;
};

struct HomogeneityFailure {
  int condition; // 1 k-partite, 2 common pattern, 3 closure, 4 sunflower centers
  std::string detail;
  std::optional<VertexSet> edge;
  std::vector<int> set; // offending coordinate set (conditions 2, 3) or vertex set (condition 4)
};

struct HomogeneityResult {
  std::optional<HomogeneousCertificate> certificate;
  std::optional<HomogeneityFailure> failure;

  explicit operator bool() const noexcept { return certificate.has_value(); }
};

/// Checks the four homogeneity conditions for h under the given k-partition:
/// (1) every edge meets every block once, (2) all edges share one projected
/// intersection structure J, (3) J is closed under intersection, and (4) every
/// intersection E ∩ E' is the center of an s-sunflower in h through E.
inline HomogeneityResult is_homogeneous(const Hypergraph& h, int s, const VertexPartition& parts) {
  if (s < 2) throw ParameterError("s must be at least 2");
  if (parts.n() != h.n()) throw ParameterError("partition is not over the hypergraph's vertex set");
  if (parts.size() != static_cast<std::size_t>(h.k()))
    throw ParameterError("partition must have exactly k blocks");
  if (h.k() > kMaxPatternWidth) throw ParameterError("uniformity too large for intersection patterns");

  HomogeneityResult out;
  const auto fail = [&](int cond, std::string why, const VertexSet* edge, std::vector<int> set) {
    out.failure = HomogeneityFailure{cond, std::move(why), edge ? std::optional(*edge) : std::nullopt, std::move(set)};
    return out;
  };

  const PatternSet full = (PatternSet{1} << h.k()) - 1;
  for (EdgeIndex e = 0; e < h.size(); ++e)
    if (detail::project_mask(h.mask(e), parts) != full)
      return fail(1, "edge " + to_string(h.edge(e)) + " does not meet every block exactly once", &h.edge(e), {});

  std::vector<PatternSet> common;
  for (EdgeIndex e = 0; e < h.size(); ++e) {
    auto proj = detail::projected_structure(h.masks(), e, parts);
    if (e == 0) {
      common = std::move(proj);
      continue;
    }
    if (proj != common) {
      std::vector<PatternSet> diff;
      std::set_symmetric_difference(proj.begin(), proj.end(), common.begin(), common.end(), std::back_inserter(diff),
                                    pattern_set_less);
      return fail(2, "edge " + to_string(h.edge(e)) + " has a different projected intersection structure",
                  &h.edge(e), diff.empty() ? std::vector<int>{} : pattern_indices(diff.front()));
    }
  }
  IntersectionPattern pattern(h.k(), common);
  if (auto bad = pattern.closure_violation()) {
    const auto meet = pattern_indices(bad->first & bad->second);
    return fail(3, "pattern is not closed under intersection: missing " + to_string(meet), nullptr, meet);
  }

  std::vector<std::vector<SunflowerRef>> witnesses(h.size());
  for (EdgeIndex e = 0; e < h.size(); ++e) {
    for (const auto& c : detail::structure_masks(h.masks(), e)) {
      const VertexSet center = to_vertex_set(c);
      auto sf = find_sunflower(h, center, s, e);
      if (!sf)
        return fail(4, to_string(center) + " is not the center of an " + std::to_string(s) + "-sunflower through " +
                           to_string(h.edge(e)),
                    &h.edge(e), center);
      SunflowerRef ref{center, {}};
      for (const auto& p : sf->petals) ref.petals.push_back(*h.find(p));
      witnesses[e].push_back(std::move(ref));
    }
  }
  out.certificate = HomogeneousCertificate{h, parts, std::move(pattern), s, std::move(witnesses)};
  return out;
}

struct ExtractOptions {
  std::uint64_t seed = 0;
  unsigned restarts = 16;
  unsigned threads = 1;
};

namespace detail {

struct Extraction {
  std::vector<EdgeIndex> edges;
  std::vector<int> colors; // colors[v] in [0, k), index 0 unused
};

inline VertexPartition partition_from_colors(int n, int k, const std::vector<int>& colors) {
  std::vector<VertexSet> blocks(static_cast<std::size_t>(k));
  for (Vertex v = 1; v <= n; ++v) blocks[static_cast<std::size_t>(colors[static_cast<std::size_t>(v)])].push_back(v);
  return VertexPartition(n, std::move(blocks));
}

inline bool rainbow(const VertexSet& e, const std::vector<int>& colors) {
  std::uint32_t seen = 0;
  for (Vertex v : e) {
    const std::uint32_t bit = std::uint32_t{1} << colors[static_cast<std::size_t>(v)];
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

/// Random colouring improved by single-vertex recolouring until no move
/// increases the number of rainbow edges.
inline std::vector<int> choose_partition(const Hypergraph& h, std::mt19937_64& rng) {
  const int n = h.n();
  const int k = h.k();
  std::vector<int> colors(static_cast<std::size_t>(n + 1), 0);
  for (Vertex v = 1; v <= n; ++v) colors[static_cast<std::size_t>(v)] = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
  std::vector<std::vector<EdgeIndex>> incident(static_cast<std::size_t>(n + 1));
  for (EdgeIndex e = 0; e < h.size(); ++e)
    for (Vertex v : h.edge(e)) incident[static_cast<std::size_t>(v)].push_back(e);

  bool improved = true;
  while (improved) {
    improved = false;
    for (Vertex v = 1; v <= n; ++v) {
      auto& cv = colors[static_cast<std::size_t>(v)];
      const int original = cv;
      int before = 0;
      for (auto e : incident[static_cast<std::size_t>(v)]) before += rainbow(h.edge(e), colors);
      int best_gain = 0;
      int best_color = original;
      for (int c = 0; c < k; ++c) {
        if (c == original) continue;
        cv = c;
        int after = 0;
        for (auto e : incident[static_cast<std::size_t>(v)]) after += rainbow(h.edge(e), colors);
        if (after - before > best_gain) {
          best_gain = after - before;
          best_color = c;
        }
      }
      cv = best_color;
      if (best_gain > 0) improved = true;
    }
  }
  return colors;
}

/// Shrinks `cur` until it is s-homogeneous under the colouring. Every round
/// deletes at least one edge, so the loop terminates.
inline void refine(const Hypergraph& h, int s, const VertexPartition& parts, std::vector<EdgeIndex>& cur) {
  while (cur.size() > 1) {
    std::vector<VertexMask> masks;
    for (auto e : cur) masks.push_back(h.mask(e));

    // keep the largest class of equal projected structures
    std::map<std::vector<PatternSet>, std::vector<EdgeIndex>, decltype(&pattern_family_less)> groups(
        &pattern_family_less);
    for (std::size_t i = 0; i < cur.size(); ++i) groups[projected_structure(masks, i, parts)].push_back(cur[i]);
    if (groups.size() > 1) {
      auto best = groups.begin();
      for (auto it = groups.begin(); it != groups.end(); ++it)
        if (it->second.size() > best->second.size()) best = it;
      cur = best->second;
      continue;
    }

    // closure: drop the partners of the first edge realising the first offending set
    IntersectionPattern pattern(h.k(), groups.begin()->first);
    if (auto bad = pattern.closure_violation()) {
      std::vector<EdgeIndex> kept{cur[0]};
      for (std::size_t i = 1; i < cur.size(); ++i)
        if (project_mask(masks[0] & masks[i], parts) != bad->first) kept.push_back(cur[i]);
      cur = std::move(kept);
      continue;
    }

    // sunflower centers
    const Hypergraph sub = h.subgraph(cur);
    std::vector<EdgeIndex> kept;
    for (EdgeIndex e = 0; e < sub.size(); ++e) {
      bool ok = true;
      for (const auto& c : structure_masks(sub.masks(), e))
        if (!find_sunflower(sub, to_vertex_set(c), s, e)) {
          ok = false;
          break;
        }
      if (ok) kept.push_back(cur[e]);
    }
    if (kept.size() == cur.size()) return;
    cur = std::move(kept);
  }
}

inline Extraction extract_once(const Hypergraph& h, int s, std::uint64_t seed, unsigned restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  Extraction ex;
  ex.colors = choose_partition(h, rng);
  for (EdgeIndex e = 0; e < h.size(); ++e)
    if (rainbow(h.edge(e), ex.colors)) ex.edges.push_back(e);
  if (!ex.edges.empty()) {
    const auto parts = partition_from_colors(h.n(), h.k(), ex.colors);
    refine(h, s, parts, ex.edges);
  }
  if (ex.edges.empty()) {
    // a single edge with an empty pattern is always homogeneous
    const auto& e = h.edge(0);
    for (std::size_t i = 0; i < e.size(); ++i) ex.colors[static_cast<std::size_t>(e[i])] = static_cast<int>(i);
    ex.edges = {0};
  }
  return ex;
}

} // namespace detail

/// Heuristic search for a large s-homogeneous subgraph. Each restart picks a
/// k-partition by local search, keeps the rainbow edges and filters them to a
/// fixed point; the largest result wins, ties going to the earliest restart.
/// The returned certificate always passes is_homogeneous.
inline HomogeneousCertificate extract_homogeneous(const Hypergraph& h, int s, const ExtractOptions& opts = {}) {
  if (h.empty()) throw ParameterError("cannot extract from an empty hypergraph");
  if (s < 2) throw ParameterError("s must be at least 2");
  if (h.k() > kMaxPatternWidth) throw ParameterError("uniformity too large for intersection patterns");
  const unsigned restarts = std::max(1U, opts.restarts);
  auto runs = parallel_map<detail::Extraction>(
      restarts, opts.threads, [&](std::size_t r) { return detail::extract_once(h, s, opts.seed, static_cast<unsigned>(r)); });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].edges.size() > runs[best].edges.size()) best = r;

  const auto parts = detail::partition_from_colors(h.n(), h.k(), runs[best].colors);
  auto result = is_homogeneous(h.subgraph(runs[best].edges), s, parts);
  if (!result) throw std::logic_error("extraction produced a non-homogeneous subgraph: " + result.failure->detail);
  return std::move(*result.certificate);
}

} // namespace deltasys
