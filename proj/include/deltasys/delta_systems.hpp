#pragma once

#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "hypergraph.hpp"
#include "search.hpp"

namespace deltasys {

/// Pass/fail with a human-readable reason on failure.
struct Verdict {
  bool ok = true;
  std::string detail;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const noexcept { return ok; }
};

/// Sunflower: every two petals meet exactly in the center.
struct DeltaSystemWitness {
  VertexSet center;
  std::vector<VertexSet> petals;
};

struct SunflowerCheck {
  std::optional<DeltaSystemWitness> witness;
  std::string failure;
  /// Indices of the first pair whose intersection differs from the first pair's.
  std::pair<std::size_t, std::size_t> violating{0, 0};

  explicit operator bool() const noexcept { return witness.has_value(); }
};

inline SunflowerCheck is_sunflower(std::span<const VertexSet> family) {
  if (family.size() < 2) throw ParameterError("a sunflower needs at least two sets");
  std::vector<VertexMask> masks;
  masks.reserve(family.size());
  for (const auto& f : family) masks.push_back(to_mask(f));
  const VertexMask center = masks[0] & masks[1];
  SunflowerCheck out;
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if ((masks[i] & masks[j]) != center) {
        out.violating = {i, j};
        out.failure = "sets " + std::to_string(i) + " and " + std::to_string(j) + " meet in " +
                      to_string(to_vertex_set(masks[i] & masks[j])) + ", not " + to_string(to_vertex_set(center));
        return out;
      }
  out.witness = DeltaSystemWitness{to_vertex_set(center), {family.begin(), family.end()}};
  return out;
}

namespace detail {

/// Exact search for `need` pairwise-disjoint masks among `residues`, all of
/// size `width`. Returns the lexicographically first index set, or nullopt.
class DisjointPacking {
public:
  DisjointPacking(const std::vector<VertexMask>& residues, int width) : residues_(residues), width_(width) {
    const std::size_t m = residues_.size();
    compatible_.assign(m, EdgeBits(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!residues_[i].intersects(residues_[j])) {
          compatible_[i].set(j);
          compatible_[j].set(i);
        }
  }

  std::optional<std::vector<std::size_t>> find(int need) {
    chosen_.clear();
    if (need <= 0) return std::vector<std::size_t>{};
    if (width_ == 0) {
      // Empty residues are disjoint from everything, including each other.
      if (static_cast<int>(residues_.size()) < need) return std::nullopt;
      std::vector<std::size_t> all(static_cast<std::size_t>(need));
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
    EdgeBits all(residues_.size());
    for (std::size_t i = 0; i < residues_.size(); ++i) all.set(i);
    if (dfs(all, need)) return chosen_;
    return std::nullopt;
  }

private:
  bool dfs(const EdgeBits& pool, int need) {
    if (need == 0) return true;
    if (static_cast<int>(pool.count()) < need) return false;
    VertexMask covered;
    pool.for_each([&](std::size_t i) { covered |= residues_[i]; });
    if (covered.count() < need * width_) return false;
    bool done = false;
    pool.for_each([&](std::size_t i) {
      if (done) return;
      EdgeBits next = pool & compatible_[i];
      next.clear_through(i);
      chosen_.push_back(i);
      if (dfs(next, need - 1)) {
        done = true;
        return;
      }
      chosen_.pop_back();
    });
    return done;
  }

  const std::vector<VertexMask>& residues_;
  int width_;
  std::vector<EdgeBits> compatible_;
  std::vector<std::size_t> chosen_;
};

} // namespace detail

/// Exact search for s edges of h forming a sunflower with the given center.
/// With `through`, that edge must be one of the petals.
inline std::optional<DeltaSystemWitness> find_sunflower(const Hypergraph& h, const VertexSet& center, int s,
                                                        std::optional<EdgeIndex> through = std::nullopt) {
  if (s < 2) throw ParameterError("sunflower size must be at least 2");
  const VertexSet c = make_vertex_set(center);
  for (Vertex v : c)
    if (v < 1 || v > h.n()) return std::nullopt;
  if (static_cast<int>(c.size()) >= h.k()) return std::nullopt;
  const VertexMask cm = to_mask(c);

  VertexMask forced;
  if (through) {
    if (!cm.subset_of(h.mask(*through))) return std::nullopt;
    forced = h.mask(*through) - cm;
  }
  std::vector<EdgeIndex> candidates;
  std::vector<VertexMask> residues;
  for (EdgeIndex i = 0; i < h.size(); ++i) {
    if (through && i == *through) continue;
    if (!cm.subset_of(h.mask(i))) continue;
    const VertexMask r = h.mask(i) - cm;
    if (r.intersects(forced)) continue;
    candidates.push_back(i);
    residues.push_back(r);
  }
  const int need = through ? s - 1 : s;
  detail::DisjointPacking packing(residues, h.k() - static_cast<int>(c.size()));
  const auto picked = packing.find(need);
  if (!picked) return std::nullopt;

  DeltaSystemWitness w{c, {}};
  if (through) w.petals.push_back(h.edge(*through));
  for (auto p : *picked) w.petals.push_back(h.edge(candidates[p]));
  std::sort(w.petals.begin(), w.petals.end());
  return w;
}

/// Host edge, a-partition of the host into blocks, and one group of edges per
/// block. Group i together with the host is meant to be a sunflower whose
/// center is the host minus block i.
struct AvdWitness {
  VertexSet host;
  std::vector<VertexSet> blocks;
  std::vector<std::vector<VertexSet>> groups;

  std::vector<int> a() const {
    std::vector<int> out;
    for (const auto& b : blocks) out.push_back(static_cast<int>(b.size()));
    return out;
  }
  std::vector<int> b() const {
    std::vector<int> out;
    for (const auto& g : groups) out.push_back(static_cast<int>(g.size()));
    return out;
  }
  int d() const {
    int total = 0;
    for (const auto& g : groups) total += static_cast<int>(g.size());
    return total;
  }
  /// Host first, then the groups in order.
  std::vector<VertexSet> edges() const {
    std::vector<VertexSet> out{host};
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
  }
};

namespace detail {

inline void validate_avd_shape(const AvdWitness& w) {
  const std::size_t p = w.blocks.size();
  if (p < 2) throw ParameterError("an a-partition needs at least two blocks");
  if (w.groups.size() != p) throw ParameterError("one group per block is required");
  if (w.host.empty()) throw ParameterError("host edge is empty");
  const VertexMask host = to_mask(w.host);
  if (host.count() != static_cast<int>(w.host.size())) throw ParameterError("host repeats a vertex");
  VertexMask seen;
  std::size_t total = 0;
  for (const auto& block : w.blocks) {
    if (block.empty()) throw ParameterError("block sizes a_i must be positive");
    const VertexMask bm = to_mask(block);
    if (bm.count() != static_cast<int>(block.size())) throw ParameterError("block repeats a vertex");
    if (bm.intersects(seen)) throw ParameterError("blocks are not disjoint");
    if (!bm.subset_of(host)) throw ParameterError("block " + to_string(block) + " is not inside the host");
    seen |= bm;
    total += block.size();
  }
  if (total != w.host.size() || seen != host) throw ParameterError("block sizes do not sum to k");
  for (const auto& g : w.groups) {
    if (g.empty()) throw ParameterError("group sizes b_i must be positive");
    for (const auto& e : g) {
      if (e.size() != w.host.size() || to_mask(e).count() != static_cast<int>(e.size()))
        throw ParameterError("edge " + to_string(e) + " is not a k-set");
    }
  }
}

} // namespace detail

/// Each group with the host forms a sunflower centered at host \ block.
/// Residue disjointness across groups is not checked.
inline Verdict is_semi_avb(const AvdWitness& w) {
  detail::validate_avd_shape(w);
  const VertexMask host = to_mask(w.host);
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    const VertexMask center = host - to_mask(w.blocks[i]);
    std::vector<VertexMask> members{host};
    for (const auto& e : w.groups[i]) members.push_back(to_mask(e));
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y)
        if ((members[x] & members[y]) != center) {
          const std::string lhs = x == 0 ? "host" : to_string(w.groups[i][x - 1]);
          return Verdict::fail("group " + std::to_string(i + 1) + ": " + lhs + " and " +
                               to_string(w.groups[i][y - 1]) + " meet in " +
                               to_string(to_vertex_set(members[x] & members[y])) + ", expected center " +
                               to_string(to_vertex_set(center)));
        }
  }
  return Verdict::pass();
}

/// Semi conditions, pairwise disjoint residues over all groups, and sum b = d.
inline Verdict is_avd(const AvdWitness& w, int d) {
  Verdict semi = is_semi_avb(w);
  if (!semi) return semi;
  const VertexMask host = to_mask(w.host);
  std::vector<std::pair<VertexMask, const VertexSet*>> residues;
  for (const auto& g : w.groups)
    for (const auto& e : g) residues.emplace_back(to_mask(e) - host, &e);
  for (std::size_t x = 0; x < residues.size(); ++x)
    for (std::size_t y = x + 1; y < residues.size(); ++y)
      if (residues[x].first.intersects(residues[y].first))
        return Verdict::fail("residues of " + to_string(*residues[x].second) + " and " +
                             to_string(*residues[y].second) + " overlap");
  if (w.d() != d) return Verdict::fail("group sizes sum to " + std::to_string(w.d()) + ", not " + std::to_string(d));
  return Verdict::pass();
}

/// Greedy extraction of an (a,b)-system from a semi-(a,c)-system, where c is
/// the witness's group sizes. Requires c_i >= b_i + sum_{j<i} a_j b_j; ties are
/// broken by taking the lexicographically smallest admissible edges.
inline AvdWitness complete_semi(const AvdWitness& semi, std::span<const int> b) {
  if (Verdict v = is_semi_avb(semi); !v) throw ParameterError("input is not a semi system: " + v.detail);
  const std::size_t p = semi.blocks.size();
  if (b.size() != p) throw ParameterError("b must have one entry per block");
  for (int bi : b)
    if (bi < 1) throw ParameterError("b_i must be positive");
  const auto a = semi.a();
  const auto c = semi.b();
  long long prefix = 0;
  for (std::size_t i = 0; i < p; ++i) {
    if (c[i] < b[i] + prefix)
      throw PreconditionError("group " + std::to_string(i + 1) + " has " + std::to_string(c[i]) +
                              " edges but needs at least " + std::to_string(b[i] + prefix));
    prefix += static_cast<long long>(a[i]) * b[i];
  }

  const VertexMask host = to_mask(semi.host);
  AvdWitness out{semi.host, semi.blocks, std::vector<std::vector<VertexSet>>(p)};
  VertexMask used;
  for (std::size_t i = 0; i < p; ++i) {
    auto group = semi.groups[i];
    std::sort(group.begin(), group.end());
    for (const auto& e : group) {
      if (static_cast<int>(out.groups[i].size()) == b[i]) break;
      const VertexMask r = to_mask(e) - host;
      if (r.intersects(used)) continue;
      used |= r;
      out.groups[i].push_back(e);
    }
    if (static_cast<int>(out.groups[i].size()) != b[i])
      throw std::logic_error("greedy completion ran out of edges despite the size precondition");
  }
  return out;
}

namespace detail {

/// Exhaustive search for an (a,d)-system with a fixed host edge.
class AvdHostSearch {
public:
  AvdHostSearch(const Hypergraph& h, EdgeIndex host, std::span<const int> a, int d, std::uint64_t cap)
      : h_(h), host_(host), a_(a.begin(), a.end()), d_(d), nodes_(cap), host_mask_(h.mask(host)) {}

  SearchOutcome<AvdWitness> run() {
    SearchOutcome<AvdWitness> out;
    blocks_.assign(a_.size(), VertexMask{});
    const Step s = partitions(0, host_mask_);
    out.nodes = nodes_.count();
    if (s == Step::exhausted) {
      out.status = SearchStatus::budget_exhausted;
    } else if (s == Step::found) {
      out.status = SearchStatus::found;
      out.witness = std::move(witness_);
    } else {
      out.status = SearchStatus::none;
    }
    return out;
  }

private:
  enum class Step { next, found, exhausted };

  // Assigns block i from the unassigned host vertices. Blocks of equal size
  // are kept in increasing order of their smallest vertex.
  Step partitions(std::size_t i, VertexMask remaining) {
    if (i == a_.size()) return try_partition();
    const VertexSet pool = to_vertex_set(remaining);
    int floor_vertex = 0;
    for (std::size_t j = i; j-- > 0;)
      if (a_[j] == a_[i]) {
        floor_vertex = blocks_[j].lowest() + 1;
        break;
      }
    Step result = Step::next;
    for_each_combination(static_cast<int>(pool.size()), a_[i], [&](std::span<const int> idx) {
      if (pool[static_cast<std::size_t>(idx[0])] <= floor_vertex) return true;
      VertexMask block;
      for (int x : idx) block.set(pool[static_cast<std::size_t>(x)] - 1);
      blocks_[i] = block;
      result = partitions(i + 1, remaining - block);
      return result == Step::next;
    });
    return result;
  }

  Step try_partition() {
    if (!nodes_.tick()) return Step::exhausted;
    const std::size_t p = a_.size();
    cands_.assign(p, {});
    residues_.assign(p, {});
    for (std::size_t i = 0; i < p; ++i) {
      const VertexMask center = host_mask_ - blocks_[i];
      for (EdgeIndex e = 0; e < h_.size(); ++e) {
        if (e == host_) continue;
        if ((h_.mask(e) & host_mask_) != center) continue;
        cands_[i].push_back(e);
        residues_[i].push_back(h_.mask(e) - host_mask_);
      }
      if (cands_[i].empty()) return Step::next;
    }
    Step result = Step::next;
    for_each_composition(d_, static_cast<int>(p), [&](std::span<const int> b) {
      for (std::size_t i = 0; i < p; ++i)
        if (cands_[i].size() < static_cast<std::size_t>(b[i])) return true;
      b_.assign(b.begin(), b.end());
      picks_.assign(p, {});
      result = select(0, 0, VertexMask{});
      return result == Step::next;
    });
    return result;
  }

  Step select(std::size_t group, std::size_t from, VertexMask used) {
    if (!nodes_.tick()) return Step::exhausted;
    if (group == a_.size()) {
      record();
      return Step::found;
    }
    const std::size_t want = static_cast<std::size_t>(b_[group]);
    if (picks_[group].size() == want) return select(group + 1, 0, used);
    const auto& cand = cands_[group];
    for (std::size_t j = from; j + (want - picks_[group].size()) <= cand.size(); ++j) {
      if (residues_[group][j].intersects(used)) continue;
      picks_[group].push_back(j);
      const Step s = select(group, j + 1, used | residues_[group][j]);
      if (s != Step::next) return s;
      picks_[group].pop_back();
    }
    return Step::next;
  }

  void record() {
    witness_.host = h_.edge(host_);
    witness_.blocks.clear();
    witness_.groups.clear();
    for (std::size_t i = 0; i < a_.size(); ++i) {
      witness_.blocks.push_back(to_vertex_set(blocks_[i]));
      std::vector<VertexSet> g;
      for (auto j : picks_[i]) g.push_back(h_.edge(cands_[i][j]));
      witness_.groups.push_back(std::move(g));
    }
  }

  const Hypergraph& h_;
  EdgeIndex host_;
  std::vector<int> a_;
  int d_;
  NodeCounter nodes_;
  VertexMask host_mask_;
  std::vector<VertexMask> blocks_;
  std::vector<std::vector<EdgeIndex>> cands_;
  std::vector<std::vector<VertexMask>> residues_;
  std::vector<int> b_;
  std::vector<std::vector<std::size_t>> picks_;
  AvdWitness witness_;
};

} // namespace detail

inline void validate_avd_parameters(int k, std::span<const int> a, int d) {
  if (a.size() < 2) throw ParameterError("a must have at least two parts");
  int sum = 0;
  for (int x : a) {
    if (x < 1) throw ParameterError("parts of a must be positive");
    sum += x;
  }
  if (sum != k) throw ParameterError("parts of a sum to " + std::to_string(sum) + ", not k = " + std::to_string(k));
  if (d < static_cast<int>(a.size())) throw ParameterError("d must be at least the number of parts");
}

/// Exact search for an (a,d)-system in h. Hosts are scanned in edge order and
/// the first witness found is returned; the result does not depend on the
/// thread count.
inline SearchOutcome<AvdWitness> find_avd_system(const Hypergraph& h, std::span<const int> a, int d,
                                                 const SearchOptions& opts = {}) {
  validate_avd_parameters(h.k(), a, d);
  return ordered_first<AvdWitness>(h.size(), opts.threads, opts.node_budget, [&](std::size_t host, std::uint64_t cap) {
    return detail::AvdHostSearch(h, host, a, d, cap).run();
  });
}

} // namespace deltasys
