#pragma once

// Naive reference implementations used to check the library. They work on
// plain std::set / std::vector values and share no code with deltasys.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Set = std::set<int>;
using Family = std::vector<Set>;

inline Set to_set(const std::vector<int>& v) { return Set(v.begin(), v.end()); }

inline Family to_family(const std::vector<std::vector<int>>& edges) {
  Family f;
  for (const auto& e : edges) f.push_back(to_set(e));
  return f;
}

inline Set meet(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

inline bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

/// Calls f on every r-element index subset of {0..n-1}; stops when f returns true.
inline bool any_subset(int n, int r, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> pick;
  std::function<bool(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == r) return f(pick);
    for (int i = from; i < n; ++i) {
      pick.push_back(i);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

inline std::set<Set> subsets_of_size(const Set& s, int r) {
  std::vector<int> v(s.begin(), s.end());
  std::set<Set> out;
  any_subset(static_cast<int>(v.size()), r, [&](const std::vector<int>& idx) {
    Set x;
    for (int i : idx) x.insert(v[static_cast<std::size_t>(i)]);
    out.insert(x);
    return false;
  });
  return out;
}

inline std::set<Set> shadow(const Family& h, int k, int i) {
  std::set<Set> out;
  for (const auto& e : h)
    for (const auto& s : subsets_of_size(e, k - i)) out.insert(s);
  return out;
}

inline int codegree(const Family& h, const Set& s) {
  int c = 0;
  for (const auto& e : h) c += subset(s, e);
  return c;
}

/// Reduced fraction with 64-bit parts.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Fraction operator+(const Fraction& o) const {
    std::int64_t n = num * o.den + o.num * den;
    std::int64_t d = den * o.den;
    const std::int64_t g = std::gcd(n, d);
    return {n / g, d / g};
  }
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
};

inline Fraction weight(const Family& h, const Set& e, int k) {
  Fraction w;
  for (const auto& sub : subsets_of_size(e, k - 1)) w = w + Fraction{1, codegree(h, sub)};
  return w;
}

inline bool all_meet(const Family& f, const std::vector<int>& idx) {
  Set common = f[static_cast<std::size_t>(idx[0])];
  for (int i : idx) common = meet(common, f[static_cast<std::size_t>(i)]);
  return !common.empty();
}

/// Every d members (fewer if the family is smaller) share a vertex.
inline bool dwise(const Family& f, int d) {
  const int r = std::min<int>(d, static_cast<int>(f.size()));
  return !any_subset(static_cast<int>(f.size()), r, [&](const std::vector<int>& idx) { return !all_meet(f, idx); });
}

inline bool nontrivial(const Family& f, int d) {
  if (!dwise(f, d)) return false;
  std::vector<int> all(f.size());
  std::iota(all.begin(), all.end(), 0);
  return !all_meet(f, all);
}

/// Exists a t-subfamily of h that is non-trivially d-wise intersecting.
inline bool has_nontrivial(const Family& h, int t, int d) {
  return any_subset(static_cast<int>(h.size()), t, [&](const std::vector<int>& idx) {
    Family sub;
    for (int i : idx) sub.push_back(h[static_cast<std::size_t>(i)]);
    return nontrivial(sub, d);
  });
}

/// s edges containing center whose pairwise intersections are exactly center.
inline bool has_sunflower(const Family& h, const Set& center, int s) {
  Family cand;
  for (const auto& e : h)
    if (subset(center, e) && e != center) cand.push_back(e);
  return any_subset(static_cast<int>(cand.size()), s, [&](const std::vector<int>& idx) {
    for (std::size_t x = 0; x < idx.size(); ++x)
      for (std::size_t y = x + 1; y < idx.size(); ++y)
        if (meet(cand[static_cast<std::size_t>(idx[x])], cand[static_cast<std::size_t>(idx[y])]) != center)
          return false;
    return true;
  });
}

/// Ordered partitions of `host` into blocks of the given sizes.
inline std::vector<std::vector<Set>> ordered_partitions(const Set& host, const std::vector<int>& a) {
  std::vector<std::vector<Set>> out;
  std::vector<Set> cur;
  std::function<void(const Set&, std::size_t)> rec = [&](const Set& rest, std::size_t i) {
    if (i == a.size()) {
      if (rest.empty()) out.push_back(cur);
      return;
    }
    for (const auto& block : subsets_of_size(rest, a[i])) {
      Set left;
      std::set_difference(rest.begin(), rest.end(), block.begin(), block.end(), std::inserter(left, left.begin()));
      cur.push_back(block);
      rec(left, i + 1);
      cur.pop_back();
    }
  };
  rec(host, 0);
  return out;
}

/// Exists a host, an a-partition and d further edges, each meeting the host in
/// host minus one block, every block used, all residues pairwise disjoint.
inline bool has_avd(const Family& h, const std::vector<int>& a, int d) {
  for (std::size_t hi = 0; hi < h.size(); ++hi) {
    const Set& host = h[hi];
    Family others;
    for (std::size_t j = 0; j < h.size(); ++j)
      if (j != hi) others.push_back(h[j]);
    for (const auto& blocks : ordered_partitions(host, a)) {
      const bool hit = any_subset(static_cast<int>(others.size()), d, [&](const std::vector<int>& idx) {
        std::vector<int> used(blocks.size(), 0);
        Set residues;
        std::size_t residue_total = 0;
        for (int i : idx) {
          const Set& f = others[static_cast<std::size_t>(i)];
          const Set on_host = meet(f, host);
          int group = -1;
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            Set center;
            std::set_difference(host.begin(), host.end(), blocks[b].begin(), blocks[b].end(),
                                std::inserter(center, center.begin()));
            if (on_host == center) group = static_cast<int>(b);
          }
          if (group < 0) return false;
          used[static_cast<std::size_t>(group)] = 1;
          for (int v : f)
            if (!host.count(v)) {
              residues.insert(v);
              ++residue_total;
            }
        }
        if (residues.size() != residue_total) return false;
        return std::all_of(used.begin(), used.end(), [](int u) { return u == 1; });
      });
      if (hit) return true;
    }
  }
  return false;
}

/// Smallest |A|, A ⊆ {1..k}, with A not in J and below no member of J.
inline int rank(int k, const std::set<Set>& j) {
  for (int r = 0; r <= k; ++r) {
    Set all;
    for (int i = 1; i <= k; ++i) all.insert(i);
    for (const auto& a : subsets_of_size(all, r)) {
      if (j.count(a)) continue;
      bool below = false;
      for (const auto& b : j) below |= subset(a, b);
      if (!below) return r;
    }
  }
  return k;
}

/// Largest family among the `universe` sets (lexicographic list) that contains
/// none of the `bad` sets of indices; also counts the maximum families that
/// contain index 0.
struct ExtremalAnswer {
  int max = 0;
  int with_first = 0;
};

inline ExtremalAnswer max_avoiding(int universe, const std::vector<std::uint32_t>& bad) {
  ExtremalAnswer ans;
  for (std::uint32_t fam = 0; fam < (std::uint32_t{1} << universe); ++fam) {
    bool ok = true;
    for (auto b : bad)
      if ((fam & b) == b) {
        ok = false;
        break;
      }
    if (!ok) continue;
    const int size = __builtin_popcount(fam);
    if (size > ans.max) {
      ans.max = size;
      ans.with_first = 0;
    }
    if (size == ans.max && (fam & 1U)) ++ans.with_first;
  }
  return ans;
}

} // namespace oracle

namespace oracle {

/// For d = 2 and t > k: a non-trivial intersecting t-subfamily exists iff some
/// maximal clique of the "edges meet" graph has at least t members and empty
/// total intersection (a minimal subfamily with empty intersection has at
/// most k + 1 members, so it extends to t members inside the clique).
inline bool has_large_nontrivial_intersecting(const Family& h, int t) {
  const std::size_t m = h.size();
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) adj[i][j] = i != j && !meet(h[i], h[j]).empty();
  bool found = false;
  std::function<void(std::vector<std::size_t>, std::vector<std::size_t>, std::vector<std::size_t>)> bk =
      [&](std::vector<std::size_t> r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
        if (found) return;
        if (p.empty() && x.empty()) {
          if (static_cast<int>(r.size()) < t) return;
          Set common = h[r[0]];
          for (auto i : r) common = meet(common, h[i]);
          if (common.empty()) found = true;
          return;
        }
        if (static_cast<int>(r.size() + p.size()) < t) return;
        const auto candidates = p;
        for (auto v : candidates) {
          std::vector<std::size_t> r2 = r, p2, x2;
          r2.push_back(v);
          for (auto u : p)
            if (adj[v][u]) p2.push_back(u);
          for (auto u : x)
            if (adj[v][u]) x2.push_back(u);
          bk(r2, p2, x2);
          p.erase(std::find(p.begin(), p.end(), v));
          x.push_back(v);
        }
      };
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  bk({}, all, {});
  return found;
}

/// Brute-force template containment: some injective map of the core labels
/// 1..c into [n] sends f inside the family defined by `member` on labels.
inline bool fits_template(const Family& f, int n, int core, const std::function<bool(const Set&)>& member) {
  std::vector<int> image;
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  std::function<bool()> rec = [&]() {
    if (static_cast<int>(image.size()) == core) {
      for (const auto& e : f) {
        Set labels;
        for (int v : e) {
          for (int c = 0; c < core; ++c)
            if (image[static_cast<std::size_t>(c)] == v) labels.insert(c + 1);
          if (std::find(image.begin(), image.end(), v) == image.end()) labels.insert(100 + v);
        }
        if (!member(labels)) return false;
      }
      return true;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      image.push_back(v);
      if (rec()) return true;
      image.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
    return false;
  };
  return rec();
}

} // namespace oracle
