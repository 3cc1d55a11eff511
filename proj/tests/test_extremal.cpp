#include <gtest/gtest.h>

#include "deltasys/constructions.hpp"
#include "deltasys/extremal.hpp"
#include "oracles.hpp"

using namespace deltasys;

namespace {

/// Masks over the lexicographic k-set list marking every (size)-subfamily
/// that is itself the forbidden configuration.
std::vector<std::uint32_t> bad_masks(const oracle::Family& all, int size,
                                     const std::function<bool(const oracle::Family&)>& forbidden) {
  std::vector<std::uint32_t> out;
  oracle::any_subset(static_cast<int>(all.size()), size, [&](const std::vector<int>& idx) {
    oracle::Family sub;
    std::uint32_t mask = 0;
    for (int i : idx) {
      sub.push_back(all[static_cast<std::size_t>(i)]);
      mask |= std::uint32_t{1} << i;
    }
    if (forbidden(sub)) out.push_back(mask);
    return false;
  });
  return out;
}

struct Case {
  int n;
  int k;
  ForbiddenConfig config;
  int size;
  std::function<bool(const oracle::Family&)> forbidden;
};

std::vector<Case> small_cases() {
  auto nontriv = [](int d) { return [d](const oracle::Family& f) { return oracle::nontrivial(f, d); }; };
  auto avd = [](std::vector<int> a, int d) {
    return [a, d](const oracle::Family& f) { return oracle::has_avd(f, a, d); };
  };
  return {
      {5, 3, NontrivialConfig{3, 2}, 3, nontriv(2)},
      {5, 3, NontrivialConfig{4, 2}, 4, nontriv(2)},
      {5, 3, NontrivialConfig{4, 3}, 4, nontriv(3)},
      {5, 3, SimplexConfig{2}, 3, nontriv(2)},
      {5, 2, NontrivialConfig{3, 2}, 3, nontriv(2)},
      {6, 2, NontrivialConfig{3, 2}, 3, nontriv(2)},
      {6, 2, NontrivialConfig{4, 2}, 4, nontriv(2)},
      {5, 3, AvdConfig{{2, 1}, 2}, 3, avd({2, 1}, 2)},
      {5, 3, AvdConfig{{1, 2}, 2}, 3, avd({1, 2}, 2)},
      {6, 3, AvdConfig{{2, 1}, 2}, 3, avd({2, 1}, 2)},
  };
}

} // namespace

TEST(Extremal, MatchesExhaustiveEnumeration) {
  for (const auto& c : small_cases()) {
    const auto all = oracle::to_family(all_k_sets(c.n, c.k));
    const auto expect = oracle::max_avoiding(static_cast<int>(all.size()), bad_masks(all, c.size, c.forbidden));
    const auto got = max_avoiding(c.n, c.k, c.config);
    SCOPED_TRACE(to_string(c.config) + " n=" + std::to_string(c.n) + " k=" + std::to_string(c.k));
    ASSERT_TRUE(got.exact);
    EXPECT_EQ(got.max_size, static_cast<std::size_t>(expect.max));
    EXPECT_EQ(got.families.size(), static_cast<std::size_t>(expect.with_first));
    for (const auto& fam : got.families) {
      EXPECT_EQ(fam.size(), got.max_size);
      EXPECT_EQ(fam.front(), all_k_sets(c.n, c.k).front());
    }
  }
}

TEST(Extremal, NontrivialIntersectingOnlyStars) {
  for (int n : {5, 6}) {
    const auto r = max_avoiding(n, 3, NontrivialConfig{3, 2});
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.max_size, static_cast<std::size_t>(binomial(n - 1, 2)));
    // the stars at 1, 2 and 3 are the maximum families containing {1,2,3}
    EXPECT_EQ(r.families.size(), 3U);
    for (const auto& fam : r.families) {
      oracle::Set common = oracle::to_set(fam[0]);
      for (const auto& e : fam) common = oracle::meet(common, oracle::to_set(e));
      EXPECT_EQ(common.size(), 1U);
    }
  }
}

TEST(Extremal, AvdAtSixHasNonStarMaxima) {
  const auto r = max_avoiding(6, 3, AvdConfig{{2, 1}, 2});
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(r.max_size, 10U);
  std::size_t stars = 0;
  for (const auto& fam : r.families) {
    oracle::Set common = oracle::to_set(fam[0]);
    for (const auto& e : fam) common = oracle::meet(common, oracle::to_set(e));
    stars += !common.empty();
  }
  EXPECT_LT(stars, r.families.size());
}

TEST(Extremal, SimplexThreeAtSix) {
  const auto r = max_avoiding(6, 3, SimplexConfig{3});
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(r.max_size, 14U);
  for (const auto& fam : r.families) EXPECT_FALSE(find_nontrivial_subfamily(Hypergraph(6, 3, fam), 4, 3).found());
}

TEST(Extremal, BudgetMakesResultInexact) {
  const auto r = max_avoiding(6, 3, NontrivialConfig{3, 2}, SearchOptions{20, 1});
  EXPECT_FALSE(r.exact);
  EXPECT_LE(r.nodes, 20U);
}

TEST(Extremal, ParameterErrors) {
  EXPECT_THROW(max_avoiding(9, 3, NontrivialConfig{3, 2}), ParameterError);
  EXPECT_THROW(max_avoiding(5, 3, NontrivialConfig{2, 2}), ParameterError);
  EXPECT_THROW(max_avoiding(5, 3, SimplexConfig{1}), ParameterError);
  EXPECT_THROW(max_avoiding(5, 3, AvdConfig{{3}, 2}), ParameterError);
  EXPECT_THROW(max_avoiding(3, 4, NontrivialConfig{3, 2}), ParameterError);
}

TEST(Extremal, ConfigNames) {
  EXPECT_EQ(to_string(ForbiddenConfig{NontrivialConfig{3, 2}}), "nontrivial-intersecting(3,2)");
  EXPECT_EQ(to_string(ForbiddenConfig{AvdConfig{{2, 1}, 2}}), "avd-system(2,1;2)");
  EXPECT_EQ(to_string(ForbiddenConfig{SimplexConfig{3}}), "d-simplex(3)");
}

TEST(Stability, ExtremalFamiliesMissNothing) {
  const auto r = max_avoiding(6, 3, NontrivialConfig{3, 2});
  for (const auto& fam : r.families) {
    const auto scan = stability_scan(Hypergraph(6, 3, fam), Rational(0), Rational(0));
    EXPECT_EQ(scan.miss, 0U);
    EXPECT_TRUE(scan.within);
  }
}

TEST(Stability, Examples) {
  const auto star = stability_scan(build_star(8, 3), Rational(0), Rational(0));
  EXPECT_EQ(star.vertex, 1);
  EXPECT_EQ(star.miss, 0U);
  EXPECT_TRUE(star.within);

  auto edges = build_star(8, 3).edges();
  edges.erase(edges.begin(), edges.begin() + 2);
  edges.push_back({2, 3, 4});
  edges.push_back({5, 6, 7});
  const auto near = stability_scan(Hypergraph(8, 3, edges), Rational(1, 10), Rational(1, 32));
  EXPECT_EQ(near.vertex, 1);
  EXPECT_EQ(near.miss, 2U);
  EXPECT_EQ(near.allowance, Rational(2));
  EXPECT_TRUE(near.within);
  EXPECT_FALSE(stability_scan(Hypergraph(8, 3, edges), Rational(1, 10), Rational(1, 64)).within);

  EXPECT_THROW(stability_scan(Hypergraph(8, 3, {{1, 2, 3}}), Rational(1, 10), Rational(0)), ParameterError);
  EXPECT_THROW(stability_scan(build_star(8, 3), Rational(2), Rational(0)), ParameterError);
  EXPECT_THROW(stability_scan(build_star(8, 3), Rational(0), Rational(-1)), ParameterError);
}
