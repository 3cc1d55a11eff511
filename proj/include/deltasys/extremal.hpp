#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "combinatorics.hpp"
#include "delta_systems.hpp"
#include "errors.hpp"
#include "hypergraph.hpp"
#include "intersecting.hpp"
#include "search.hpp"

namespace deltasys {

struct NontrivialConfig {
  int t;
  int d;
};
struct AvdConfig {
  std::vector<int> a;
  int d;
};
/// d+1 sets, every d of which meet, with empty total intersection.
struct SimplexConfig {
  int d;
};

using ForbiddenConfig = std::variant<NontrivialConfig, AvdConfig, SimplexConfig>;

inline std::string to_string(const ForbiddenConfig& c) {
  struct V {
    std::string operator()(const NontrivialConfig& x) const {
      return "nontrivial-intersecting(" + std::to_string(x.t) + "," + std::to_string(x.d) + ")";
    }
    std::string operator()(const AvdConfig& x) const {
      std::string s = "avd-system(";
      for (std::size_t i = 0; i < x.a.size(); ++i) s += (i ? "," : "") + std::to_string(x.a[i]);
      return s + ";" + std::to_string(x.d) + ")";
    }
    std::string operator()(const SimplexConfig& x) const { return "d-simplex(" + std::to_string(x.d) + ")"; }
  };
  return std::visit(V{}, c);
}

inline void validate_config(int k, const ForbiddenConfig& c) {
  if (auto* x = std::get_if<NontrivialConfig>(&c)) {
    if (x->t < 3 || x->d < 2) throw ParameterError("nontrivial-intersecting needs t >= 3 and d >= 2");
  } else if (auto* y = std::get_if<AvdConfig>(&c)) {
    validate_avd_parameters(k, y->a, y->d);
  } else if (std::get<SimplexConfig>(c).d < 2) {
    throw ParameterError("d-simplex needs d >= 2");
  }
}

/// Whether h contains the configuration (through edge `through` when given).
/// nullopt means an inner search ran out of budget.
inline std::optional<bool> contains_config(const Hypergraph& h, const ForbiddenConfig& c, const SearchOptions& opts,
                                           std::optional<EdgeIndex> through = std::nullopt) {
  SearchStatus st;
  if (auto* x = std::get_if<NontrivialConfig>(&c)) {
    st = find_nontrivial_subfamily(h, x->t, x->d, opts, through).status;
  } else if (auto* y = std::get_if<AvdConfig>(&c)) {
    st = find_avd_system(h, y->a, y->d, opts).status;
  } else {
    const int d = std::get<SimplexConfig>(c).d;
    st = find_nontrivial_subfamily(h, d + 1, d, opts, through).status;
  }
  if (st == SearchStatus::budget_exhausted) return std::nullopt;
  return st == SearchStatus::found;
}

struct ExtremalResult {
  int n = 0;
  int k = 0;
  ForbiddenConfig config;
  std::size_t max_size = 0;
  bool exact = false;
  /// Every maximum family containing {1..k}. Any nonempty family can be
  /// relabelled to contain it, so this is complete up to that symmetry only.
  std::vector<std::vector<VertexSet>> families;
  std::uint64_t nodes = 0;
};

inline constexpr std::size_t kMaxExtremalEdges = 64;

namespace detail {

class ExtremalSearch {
public:
  ExtremalSearch(int n, int k, ForbiddenConfig config, const SearchOptions& opts)
      : n_(n), k_(k), config_(std::move(config)), opts_(opts), all_(all_k_sets(n, k)), nodes_(opts.node_budget) {}

  ExtremalResult run() {
    ExtremalResult r;
    r.n = n_;
    r.k = k_;
    r.config = config_;
    chosen_.push_back(0);
    if (!creates_config()) dfs(1);
    r.max_size = best_;
    r.families = std::move(families_);
    r.exact = !nodes_.exhausted() && !inner_exhausted_;
    r.nodes = std::min(nodes_.count(), opts_.node_budget);
    return r;
  }

private:
  bool stop() const { return nodes_.exhausted() || inner_exhausted_; }

  void record() {
    if (chosen_.size() < best_) return;
    if (chosen_.size() > best_) {
      best_ = chosen_.size();
      families_.clear();
    }
    std::vector<VertexSet> fam;
    for (auto i : chosen_) fam.push_back(all_[i]);
    families_.push_back(std::move(fam));
  }

  /// Does the last chosen edge complete a forbidden configuration?
  bool creates_config() {
    std::vector<VertexSet> fam;
    for (auto i : chosen_) fam.push_back(all_[i]);
    const Hypergraph h(n_, k_, std::move(fam));
    const auto through = h.find(all_[chosen_.back()]);
    const auto hit = contains_config(h, config_, opts_, through);
    if (!hit) {
      inner_exhausted_ = true;
      return true;
    }
    return *hit;
  }

  void dfs(std::size_t i) {
    if (!nodes_.tick() || stop()) return;
    if (chosen_.size() + (all_.size() - i) < best_) return;
    if (i == all_.size()) {
      record();
      return;
    }
    chosen_.push_back(i);
    if (!creates_config()) dfs(i + 1);
    chosen_.pop_back();
    if (stop()) return;
    dfs(i + 1);
  }

  int n_;
  int k_;
  ForbiddenConfig config_;
  SearchOptions opts_;
  std::vector<VertexSet> all_;
  NodeCounter nodes_;
  std::vector<std::size_t> chosen_;
  std::size_t best_ = 0;
  std::vector<std::vector<VertexSet>> families_;
  bool inner_exhausted_ = false;
};

} // namespace detail

/// Exact maximum size of a k-graph on [n] avoiding `config`, by branch and
/// bound over the lexicographic list of k-sets with {1..k} always included.
/// Every returned family is re-checked against the configuration.
inline ExtremalResult max_avoiding(int n, int k, const ForbiddenConfig& config, const SearchOptions& opts = {}) {
  if (n < 1 || n > kMaxVertices || k < 2 || k > n) throw ParameterError("need 2 <= k <= n");
  if (binomial(n, k) > kMaxExtremalEdges)
    throw ParameterError("C(n,k) = " + std::to_string(binomial(n, k)) + " exceeds the search limit of " +
                         std::to_string(kMaxExtremalEdges));
  validate_config(k, config);
  auto r = detail::ExtremalSearch(n, k, config, opts).run();
  if (r.exact)
    for (const auto& fam : r.families)
      if (contains_config(Hypergraph(n, k, fam), config, opts).value_or(true))
        throw std::logic_error("extremal family failed re-validation");
  return r;
}

struct StabilityResult {
  Vertex vertex = 0;
  std::size_t miss = 0;
  Rational allowance; // delta * n^(k-1)
  bool within = false;
};

/// Vertex of maximum degree (smallest on ties) and the number of edges missing it.
inline StabilityResult stability_scan(const Hypergraph& h, const Rational& epsilon, const Rational& delta) {
  if (epsilon < 0 || epsilon > 1) throw ParameterError("epsilon must lie in [0, 1]");
  if (delta < 0) throw ParameterError("delta must be non-negative");
  const Rational star = Rational(static_cast<long long>(binomial(h.n() - 1, h.k() - 1)));
  if (Rational(static_cast<long long>(h.size())) < (1 - epsilon) * star)
    throw ParameterError("hypergraph has fewer than (1 - epsilon) C(n-1, k-1) edges");
  StabilityResult r;
  std::size_t best = 0;
  for (Vertex v = 1; v <= h.n(); ++v) {
    const auto deg = degree(h, v);
    if (r.vertex == 0 || deg > best) {
      r.vertex = v;
      best = deg;
    }
  }
  r.miss = h.size() - best;
  Rational pow = 1;
  for (int i = 0; i < h.k() - 1; ++i) pow *= h.n();
  r.allowance = delta * pow;
  r.within = Rational(static_cast<long long>(r.miss)) <= r.allowance;
  return r;
}

} // namespace deltasys
