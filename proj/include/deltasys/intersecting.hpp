#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "hypergraph.hpp"
#include "search.hpp"

namespace deltasys {

/// A family of edges together with its wise-ness and total intersection.
/// Non-trivial means the total intersection is empty.
struct FamilyWitness {
  std::vector<VertexSet> edges;
  int d = 2;
  VertexSet common_intersection;

  bool nontrivial() const noexcept { return common_intersection.empty(); }
};

namespace detail {

/// Smallest-lexicographic subfamily of at most r members whose intersection is empty.
inline std::optional<std::vector<std::size_t>> find_empty_tuple(const std::vector<VertexMask>& masks, int r) {
  std::vector<std::size_t> chosen;
  std::optional<std::vector<std::size_t>> found;
  auto dfs = [&](auto&& self, std::size_t from, const VertexMask& running) -> bool {
    if (!chosen.empty() && running.none()) {
      found = chosen;
      return true;
    }
    if (static_cast<int>(chosen.size()) == r) return false;
    for (std::size_t i = from; i < masks.size(); ++i) {
      chosen.push_back(i);
      if (self(self, i + 1, chosen.size() == 1 ? masks[i] : running & masks[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  dfs(dfs, 0, VertexMask{});
  return found;
}

inline std::vector<VertexMask> masks_of(std::span<const VertexSet> family) {
  std::vector<VertexMask> out;
  out.reserve(family.size());
  for (const auto& e : family) out.push_back(to_mask(e));
  return out;
}

} // namespace detail

/// Every choice of d members (repeats allowed) has a common vertex. Families
/// smaller than d must therefore have a common vertex overall.
inline bool is_dwise_intersecting(std::span<const VertexSet> family, int d) {
  if (d < 2) throw ParameterError("d must be at least 2");
  if (family.empty()) throw ParameterError("family must be nonempty");
  return !detail::find_empty_tuple(detail::masks_of(family), d).has_value();
}

struct NontrivialCheck {
  std::optional<FamilyWitness> witness;
  std::string failure;
  /// Members with empty intersection when the family is not d-wise intersecting.
  std::vector<std::size_t> disjoint_tuple;
  /// Shared vertices when the family is d-wise intersecting but trivial.
  VertexSet common;

  explicit operator bool() const noexcept { return witness.has_value(); }
};

inline NontrivialCheck is_nontrivial(std::span<const VertexSet> family, int d) {
  if (d < 2) throw ParameterError("d must be at least 2");
  if (family.empty()) throw ParameterError("family must be nonempty");
  const auto masks = detail::masks_of(family);
  NontrivialCheck out;
  if (auto tuple = detail::find_empty_tuple(masks, d)) {
    out.disjoint_tuple = *tuple;
    out.failure = "not " + std::to_string(d) + "-wise intersecting:";
    for (auto i : *tuple) out.failure += " " + to_string(family[i]);
    out.failure += " have no common vertex";
    return out;
  }
  VertexMask all = masks[0];
  for (const auto& m : masks) all &= m;
  if (all.any()) {
    out.common = to_vertex_set(all);
    out.failure = "trivial: every member contains " + to_string(out.common);
    return out;
  }
  out.witness = FamilyWitness{{family.begin(), family.end()}, d, {}};
  return out;
}

/// d + 1 sets, every d of which meet, with empty total intersection.
inline bool is_d_simplex(std::span<const VertexSet> family, int d) {
  if (d < 1) throw ParameterError("d must be positive");
  if (family.size() != static_cast<std::size_t>(d) + 1)
    throw ParameterError("a " + std::to_string(d) + "-simplex has exactly " + std::to_string(d + 1) + " sets");
  const auto masks = detail::masks_of(family);
  VertexMask all = masks[0];
  for (const auto& m : masks) all &= m;
  if (all.any()) return false;
  for (std::size_t skip = 0; skip < masks.size(); ++skip) {
    VertexMask rest;
    bool first = true;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (i == skip) continue;
      rest = first ? masks[i] : rest & masks[i];
      first = false;
    }
    if (rest.none()) return false;
  }
  return true;
}

namespace detail {

/// Depth-first search for a non-trivial d-wise intersecting subfamily of size t.
/// Candidate sets only hold edges meeting every chosen edge. Branches are cut
/// when too few candidates remain, when greedy classes of pairwise disjoint
/// candidates show fewer than t - |chosen| can be added, or when some vertex of
/// the running intersection lies in every remaining candidate.
class NontrivialSearch {
public:
  NontrivialSearch(const Hypergraph& h, int t, int d) : h_(h), t_(t), d_(d) {
    const std::size_t m = h.size();
    adjacent_.assign(m, EdgeBits(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (h.mask(i).intersects(h.mask(j))) {
          adjacent_[i].set(j);
          adjacent_[j].set(i);
        }
  }

  /// Families whose smallest member is `first`.
  SearchOutcome<FamilyWitness> from_first(EdgeIndex first, std::uint64_t cap) const {
    EdgeBits pool = adjacent_[first];
    pool.clear_through(first);
    return run(first, pool, cap);
  }

  /// Families containing `member`.
  SearchOutcome<FamilyWitness> through(EdgeIndex member, std::uint64_t cap) const {
    return run(member, adjacent_[member], cap);
  }

private:
  struct State {
    std::vector<EdgeIndex> chosen;
    // levels[j] holds intersections of the j-subsets of chosen, j = 1..d-1
    std::vector<std::vector<VertexMask>> levels;
  };
  enum class Step { next, found, exhausted };

  SearchOutcome<FamilyWitness> run(EdgeIndex seed, const EdgeBits& pool, std::uint64_t cap) const {
    NodeCounter nodes(cap);
    State st;
    st.levels.assign(static_cast<std::size_t>(d_), {});
    push(st, seed);
    const Step s = dfs(st, pool, h_.mask(seed), nodes);
    SearchOutcome<FamilyWitness> out;
    out.nodes = nodes.count();
    if (s == Step::exhausted) {
      out.status = SearchStatus::budget_exhausted;
    } else if (s == Step::found) {
      out.status = SearchStatus::found;
      FamilyWitness w;
      w.d = d_;
      for (auto i : st.chosen) w.edges.push_back(h_.edge(i));
      std::sort(w.edges.begin(), w.edges.end());
      out.witness = std::move(w);
    } else {
      out.status = SearchStatus::none;
    }
    return out;
  }

  bool compatible(const State& st, EdgeIndex v) const {
    const VertexMask& m = h_.mask(v);
    for (std::size_t j = 1; j < st.levels.size(); ++j)
      for (const auto& x : st.levels[j])
        if (!x.intersects(m)) return false;
    return true;
  }

  void push(State& st, EdgeIndex v) const {
    const VertexMask& m = h_.mask(v);
    for (std::size_t j = st.levels.size(); j-- > 2;)
      for (const auto& x : st.levels[j - 1]) st.levels[j].push_back(x & m);
    if (st.levels.size() > 1) st.levels[1].push_back(m);
    st.chosen.push_back(v);
  }

  Step dfs(State& st, const EdgeBits& pool, const VertexMask& common, NodeCounter& nodes) const {
    if (!nodes.tick()) return Step::exhausted;
    const int have = static_cast<int>(st.chosen.size());
    if (have == t_) return common.none() ? Step::found : Step::next;
    const int missing = t_ - have;
    if (static_cast<int>(pool.count()) < missing) return Step::next;

    // A vertex kept by every remaining candidate can never leave the intersection.
    VertexMask stuck = common;
    std::vector<VertexMask> classes;
    pool.for_each([&](std::size_t i) {
      const VertexMask& m = h_.mask(i);
      stuck &= m;
      for (auto& c : classes)
        if (!c.intersects(m)) {
          c |= m;
          return;
        }
      classes.push_back(m);
    });
    if (stuck.any()) return Step::next;
    if (static_cast<int>(classes.size()) < missing) return Step::next;

    Step result = Step::next;
    pool.for_each([&](std::size_t v) {
      if (result != Step::next) return;
      if (d_ > 2 && !compatible(st, v)) return;
      EdgeBits next = pool & adjacent_[v];
      next.clear_through(v);
      State child = st;
      push(child, v);
      result = dfs(child, next, common & h_.mask(v), nodes);
      if (result == Step::found) st = std::move(child);
    });
    return result;
  }

  const Hypergraph& h_;
  int t_;
  int d_;
  std::vector<EdgeBits> adjacent_;
};

} // namespace detail

/// Exact search for a non-trivial d-wise intersecting subfamily of h with t
/// edges. With `through`, only families containing that edge are considered.
inline SearchOutcome<FamilyWitness> find_nontrivial_subfamily(const Hypergraph& h, int t, int d,
                                                              const SearchOptions& opts = {},
                                                              std::optional<EdgeIndex> through = std::nullopt) {
  if (t < 3) throw ParameterError("subfamily size must be at least 3");
  if (d < 2) throw ParameterError("d must be at least 2");
  detail::NontrivialSearch search(h, t, d);
  if (through) {
    if (*through >= h.size()) throw ParameterError("edge index out of range");
    auto r = search.through(*through, opts.node_budget);
    if (r.nodes > opts.node_budget) r.status = SearchStatus::budget_exhausted;
    return r;
  }
  return ordered_first<FamilyWitness>(h.size(), opts.threads, opts.node_budget,
                                      [&](std::size_t first, std::uint64_t cap) { return search.from_first(first, cap); });
}

// ---------------------------------------------------------------------------
// Intersecting 3-graphs with at least 11 edges: containment in one of seven
// template families, each defined on a handful of core vertices.

enum class KMTag { EKR, H0, H1, H2, H3, H4, H5 };

inline constexpr std::array<KMTag, 7> kAllKMTags{KMTag::EKR, KMTag::H0, KMTag::H1, KMTag::H2,
                                                 KMTag::H3,  KMTag::H4, KMTag::H5};

inline std::string to_string(KMTag t) {
  switch (t) {
  case KMTag::EKR: return "EKR";
  case KMTag::H0: return "H0";
  case KMTag::H1: return "H1";
  case KMTag::H2: return "H2";
  case KMTag::H3: return "H3";
  case KMTag::H4: return "H4";
  case KMTag::H5: return "H5";
  }
  return "?";
}

inline std::optional<KMTag> km_tag_from_string(std::string_view s) {
  for (auto t : kAllKMTags)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Number of labelled core vertices of a template.
inline int km_core_size(KMTag t) {
  switch (t) {
  case KMTag::EKR: return 1;
  case KMTag::H0: return 3;
  case KMTag::H1: return 4;
  case KMTag::H2: return 5;
  case KMTag::H3: return 5;
  case KMTag::H4: return 6;
  case KMTag::H5: return 6;
  }
  return 0;
}

namespace detail {

constexpr unsigned triple(int a, int b, int c) { return (1U << a) | (1U << b) | (1U << c); }

/// Membership of a 3-set in a template, given the set of core labels it
/// carries (bit c for core vertex c; non-core vertices carry no bit).
inline bool km_member(KMTag tag, unsigned labels) {
  auto has = [&](int c) { return ((labels >> c) & 1U) != 0; };
  auto one_of = [&](std::initializer_list<unsigned> triples) {
    for (unsigned t : triples)
      if (labels == t) return true;
    return false;
  };
  switch (tag) {
  case KMTag::EKR: return has(1);
  case KMTag::H0: return int(has(1)) + int(has(2)) + int(has(3)) >= 2;
  case KMTag::H1: return (has(1) && (has(2) || has(3) || has(4))) || labels == triple(2, 3, 4);
  case KMTag::H2:
    return (has(1) && (has(2) || has(3))) || one_of({triple(2, 3, 4), triple(2, 3, 5), triple(1, 4, 5)});
  case KMTag::H3:
    return (has(1) && has(2)) || one_of({triple(1, 3, 4), triple(1, 3, 5), triple(1, 4, 5), triple(2, 3, 4),
                                         triple(2, 3, 5), triple(2, 4, 5)});
  case KMTag::H4:
    return (has(1) && has(2)) || one_of({triple(1, 3, 4), triple(1, 5, 6), triple(2, 3, 5), triple(2, 3, 6),
                                         triple(2, 4, 5), triple(2, 4, 6)});
  case KMTag::H5:
    return (has(1) && has(2)) || one_of({triple(1, 3, 4), triple(1, 5, 6), triple(1, 3, 6), triple(2, 3, 5),
                                         triple(2, 3, 6), triple(2, 4, 6)});
  }
  return false;
}

} // namespace detail

/// A template tag plus the images of its core vertices: core vertex c is
/// relabelled to map[c - 1].
struct KMFamily {
  KMTag tag = KMTag::EKR;
  std::vector<Vertex> map;
};

inline bool km_contains(const KMFamily& f, const VertexSet& edge) {
  unsigned labels = 0;
  for (Vertex v : edge)
    for (std::size_t c = 0; c < f.map.size(); ++c)
      if (f.map[c] == v) labels |= 1U << (c + 1);
  return detail::km_member(f.tag, labels);
}

inline std::vector<Vertex> identity_core(KMTag tag) {
  std::vector<Vertex> m(static_cast<std::size_t>(km_core_size(tag)));
  std::iota(m.begin(), m.end(), 1);
  return m;
}

/// All triples of [n] in the relabelled template.
inline Hypergraph km_template(const KMFamily& f, int n) {
  std::vector<VertexSet> edges;
  for (auto& e : all_k_sets(n, 3))
    if (km_contains(f, e)) edges.push_back(std::move(e));
  return Hypergraph(n, 3, std::move(edges));
}

inline Hypergraph km_template(KMTag tag, int n) { return km_template(KMFamily{tag, identity_core(tag)}, n); }

namespace detail {

class KMMatcher {
public:
  KMMatcher(const Hypergraph& f, KMTag tag) : f_(f), tag_(tag), core_(km_core_size(tag)) {
    for (const auto& m : f.masks()) support_ |= m;
  }

  std::optional<std::vector<Vertex>> match() {
    map_.assign(static_cast<std::size_t>(core_), 0);
    if (assign(0)) return map_;
    return std::nullopt;
  }

private:
  bool assign(int c) {
    if (c == core_) return true;
    // Vertices outside the support are interchangeable; try only the first free one.
    bool outside_tried = false;
    for (Vertex v = 1; v <= f_.n(); ++v) {
      if (std::find(map_.begin(), map_.begin() + c, v) != map_.begin() + c) continue;
      if (!support_.test(v - 1)) {
        if (outside_tried) continue;
        outside_tried = true;
      }
      map_[static_cast<std::size_t>(c)] = v;
      if (feasible(c + 1) && assign(c + 1)) return true;
    }
    map_[static_cast<std::size_t>(c)] = 0;
    return false;
  }

  // Every edge must still admit a completion of the partial map (core
  // vertices 1..assigned fixed) under which it lies in the template.
  bool feasible(int assigned) const {
    for (const auto& e : f_.edges()) {
      unsigned known = 0;
      std::vector<int> unknown;
      for (Vertex v : e) {
        int label = 0;
        for (int c = 0; c < assigned; ++c)
          if (map_[static_cast<std::size_t>(c)] == v) label = c + 1;
        if (label) known |= 1U << label;
        else unknown.push_back(v);
      }
      if (assigned == core_) {
        if (!km_member(tag_, known)) return false;
        continue;
      }
      if (!completable(known, unknown.size(), assigned)) return false;
    }
    return true;
  }

  bool completable(unsigned known, std::size_t free_slots, int assigned) const {
    if (km_member(tag_, known)) return true;
    if (free_slots == 0) return false;
    for (int c = assigned + 1; c <= core_; ++c) {
      if ((known >> c) & 1U) continue;
      if (completable(known | (1U << c), free_slots - 1, assigned)) return true;
    }
    return false;
  }

  const Hypergraph& f_;
  KMTag tag_;
  int core_;
  VertexMask support_;
  std::vector<Vertex> map_;
};

} // namespace detail

/// Finds a template (tried in the order EKR, H0, ..., H5) and a relabelling
/// of its core vertices containing f. Throws ClassificationError with a dump
/// when no template fits.
inline KMFamily classify_intersecting(const Hypergraph& f) {
  if (f.k() != 3) throw UnsupportedUniformity("classification is defined for 3-graphs only");
  if (f.size() < 11) throw ParameterError("classification needs at least 11 edges");
  if (!is_dwise_intersecting(f.edges(), 2)) throw ParameterError("family is not intersecting");
  for (KMTag tag : kAllKMTags) {
    if (km_core_size(tag) > f.n()) continue;
    if (auto map = detail::KMMatcher(f, tag).match()) return KMFamily{tag, std::move(*map)};
  }
  std::ostringstream dump;
  dump << "intersecting 3-graph with " << f.size() << " edges fits no template; edges:";
  for (const auto& e : f.edges()) dump << ' ' << to_string(e);
  throw ClassificationError(dump.str());
}

namespace detail {

inline long long ceil_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

} // namespace detail

/// Lower bound on the max pair codegree of an e-edge family inside the template.
inline long long km_codegree_bound(KMTag tag, long long e) {
  switch (tag) {
  case KMTag::H0: return detail::ceil_div(e, 3);
  case KMTag::H2: return detail::ceil_div(e - 3, 2);
  case KMTag::H3:
  case KMTag::H4:
  case KMTag::H5: return e - 6;
  default: throw ParameterError("no codegree bound is stated for template " + to_string(tag));
  }
}

inline bool check_km_codegree_bounds(const Hypergraph& f, const KMFamily& family) {
  if (f.k() != 3) throw UnsupportedUniformity("codegree bounds are defined for 3-graphs only");
  const long long bound = km_codegree_bound(family.tag, static_cast<long long>(f.size()));
  if (family.map.size() != static_cast<std::size_t>(km_core_size(family.tag)))
    throw ParameterError("relabelling map has the wrong number of core vertices");
  for (const auto& e : f.edges())
    if (!km_contains(family, e))
      throw ParameterError("edge " + to_string(e) + " is not in template " + to_string(family.tag));
  return max_codegree2(f) >= bound;
}

} // namespace deltasys
