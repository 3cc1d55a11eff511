#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "mask.hpp"

namespace deltasys {

using Vertex = int;
/// Sorted, duplicate-free list of 1-based vertices.
using VertexSet = std::vector<Vertex>;
using EdgeIndex = std::size_t;
using Rational = boost::multiprecision::cpp_rational;

inline VertexMask to_mask(std::span<const Vertex> s) {
  VertexMask m;
  for (Vertex v : s) m.set(v - 1);
  return m;
}

inline VertexSet to_vertex_set(const VertexMask& m) {
  VertexSet s;
  m.for_each([&](int bit) { s.push_back(bit + 1); });
  return s;
}

/// Sorts and deduplicates.
inline VertexSet make_vertex_set(std::vector<Vertex> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::string to_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

/// k-uniform hypergraph on [n]. Edges are kept sorted lexicographically and
/// never change after construction.
class Hypergraph {
public:
  Hypergraph(int n, int k) : n_(n), k_(k) { validate_shape(); }

  Hypergraph(int n, int k, std::vector<VertexSet> edges) : n_(n), k_(k) {
    validate_shape();
    for (auto& e : edges) {
      std::sort(e.begin(), e.end());
      if (static_cast<int>(e.size()) != k_)
        throw ParameterError("edge " + to_string(e) + " does not have " + std::to_string(k_) + " vertices");
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw ParameterError("edge " + to_string(e) + " repeats a vertex");
      if (e.front() < 1 || e.back() > n_)
        throw ParameterError("edge " + to_string(e) + " leaves [1," + std::to_string(n_) + "]");
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
      throw ParameterError("duplicate edge " + to_string(*dup));
    edges_ = std::move(edges);
    masks_.reserve(edges_.size());
    for (const auto& e : edges_) masks_.push_back(to_mask(e));
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  const std::vector<VertexSet>& edges() const noexcept { return edges_; }
  const VertexSet& edge(EdgeIndex i) const { return edges_[i]; }
  const std::vector<VertexMask>& masks() const noexcept { return masks_; }
  const VertexMask& mask(EdgeIndex i) const { return masks_[i]; }

  std::optional<EdgeIndex> find(const VertexSet& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<EdgeIndex>(it - edges_.begin());
  }
  bool contains(const VertexSet& e) const { return find(e).has_value(); }

  /// Edge-induced subgraph on the same vertex set.
  Hypergraph subgraph(std::span<const EdgeIndex> indices) const {
    std::vector<VertexSet> sub;
    sub.reserve(indices.size());
    for (auto i : indices) sub.push_back(edges_[i]);
    return Hypergraph(n_, k_, std::move(sub));
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

private:
  void validate_shape() const {
    if (n_ < 1) throw ParameterError("vertex count must be positive");
    if (n_ > kMaxVertices)
      throw ParameterError("vertex count " + std::to_string(n_) + " exceeds mask width " +
                           std::to_string(kMaxVertices));
    if (k_ < 2 || k_ > n_) throw ParameterError("uniformity must satisfy 2 <= k <= n");
  }

  int n_;
  int k_;
  std::vector<VertexSet> edges_;
  std::vector<VertexMask> masks_;
};

/// Calls f(mask) for every r-subset of the vertices in `edge`.
template <class F>
void for_each_subset(const VertexSet& edge, int r, F&& f) {
  for_each_combination(static_cast<int>(edge.size()), r, [&](std::span<const int> idx) {
    VertexMask m;
    for (int i : idx) m.set(edge[static_cast<std::size_t>(i)] - 1);
    f(m);
  });
}

inline std::size_t degree(const Hypergraph& h, Vertex v) {
  std::size_t d = 0;
  for (const auto& m : h.masks())
    if (m.test(v - 1)) ++d;
  return d;
}

/// Number of edges containing s. The empty set gives |H|.
inline std::size_t codegree(const Hypergraph& h, std::span<const Vertex> s) {
  for (Vertex v : s)
    if (v < 1 || v > h.n()) return 0;
  const VertexMask sm = to_mask(s);
  std::size_t d = 0;
  for (const auto& m : h.masks())
    if (sm.subset_of(m)) ++d;
  return d;
}

/// The i-th shadow: all (k - i)-sets contained in some edge, lexicographically sorted.
inline std::vector<VertexSet> shadow(const Hypergraph& h, int i) {
  if (i < 0 || i > h.k() - 1)
    throw ParameterError("shadow index must lie in [0, k-1], got " + std::to_string(i));
  if (i == 0) return h.edges();
  std::unordered_set<VertexMask, MaskHash> seen;
  for (const auto& e : h.edges()) for_each_subset(e, h.k() - i, [&](const VertexMask& m) { seen.insert(m); });
  std::vector<VertexSet> out;
  out.reserve(seen.size());
  for (const auto& m : seen) out.push_back(to_vertex_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

/// Pair codegree table for 3-graphs, indexed [u][v] with 1-based vertices.
inline std::vector<std::vector<int>> pair_codegrees(const Hypergraph& h) {
  std::vector<std::vector<int>> deg(static_cast<std::size_t>(h.n() + 1),
                                    std::vector<int>(static_cast<std::size_t>(h.n() + 1), 0));
  for (const auto& e : h.edges())
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        ++deg[static_cast<std::size_t>(e[a])][static_cast<std::size_t>(e[b])];
        ++deg[static_cast<std::size_t>(e[b])][static_cast<std::size_t>(e[a])];
      }
  return deg;
}

/// Maximum pair codegree of a 3-graph.
inline int max_codegree2(const Hypergraph& h) {
  if (h.k() != 3) throw UnsupportedUniformity("max pair codegree is defined for 3-graphs only");
  const auto deg = pair_codegrees(h);
  int best = 0;
  for (int u = 1; u <= h.n(); ++u)
    for (int v = u + 1; v <= h.n(); ++v)
      best = std::max(best, deg[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
  return best;
}

namespace detail {

inline std::unordered_map<VertexMask, std::size_t, MaskHash> lower_shadow_degrees(const Hypergraph& h) {
  std::unordered_map<VertexMask, std::size_t, MaskHash> deg;
  for (const auto& e : h.edges()) for_each_subset(e, h.k() - 1, [&](const VertexMask& m) { ++deg[m]; });
  return deg;
}

} // namespace detail

/// Sum over the (k-1)-subsets E' of E of 1/deg(E'), exactly.
inline Rational edge_weight(const Hypergraph& h, VertexSet e) {
  std::sort(e.begin(), e.end());
  if (!h.contains(e)) throw ParameterError("edge " + to_string(e) + " is not in the hypergraph");
  Rational w = 0;
  for_each_subset(e, h.k() - 1, [&](const VertexMask& sub) {
    std::size_t d = 0;
    for (const auto& m : h.masks())
      if (sub.subset_of(m)) ++d;
    w += Rational(1, static_cast<long long>(d));
  });
  return w;
}

/// Weights of all edges in edge order, sharing one degree table.
inline std::vector<Rational> edge_weights(const Hypergraph& h) {
  const auto deg = detail::lower_shadow_degrees(h);
  std::vector<Rational> out;
  out.reserve(h.size());
  for (const auto& e : h.edges()) {
    Rational w = 0;
    for_each_subset(e, h.k() - 1,
                    [&](const VertexMask& sub) { w += Rational(1, static_cast<long long>(deg.at(sub))); });
    out.push_back(std::move(w));
  }
  return out;
}

/// All k-subsets of [n] in lexicographic order.
inline std::vector<VertexSet> all_k_sets(int n, int k) {
  std::vector<VertexSet> out;
  for_each_combination(n, k, [&](std::span<const int> idx) {
    VertexSet e;
    for (int i : idx) e.push_back(i + 1);
    out.push_back(std::move(e));
  });
  return out;
}

inline Hypergraph complete_hypergraph(int n, int k) { return Hypergraph(n, k, all_k_sets(n, k)); }

/// The k-sets of [n] that are not edges of h.
inline Hypergraph complement(const Hypergraph& h) {
  std::vector<VertexSet> out;
  for (auto& e : all_k_sets(h.n(), h.k()))
    if (!h.contains(e)) out.push_back(std::move(e));
  return Hypergraph(h.n(), h.k(), std::move(out));
}

} // namespace deltasys
