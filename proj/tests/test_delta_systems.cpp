#include <gtest/gtest.h>

#include <random>

#include "deltasys/constructions.hpp"
#include "deltasys/delta_systems.hpp"
#include "deltasys/intersecting.hpp"
#include "deltasys/io.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace deltasys;

namespace {

AvdWitness example_witness() {
  AvdWitness w;
  w.host = {1, 2, 3};
  w.blocks = {{1, 2}, {3}};
  w.groups = {{{3, 4, 5}}, {{1, 2, 6}}};
  return w;
}

std::vector<int> residue_vertices(const AvdWitness& w) {
  std::vector<int> out;
  for (const auto& g : w.groups)
    for (const auto& e : g)
      for (int v : e)
        if (std::find(w.host.begin(), w.host.end(), v) == w.host.end()) out.push_back(v);
  return out;
}

} // namespace

TEST(Sunflower, Examples) {
  auto a = is_sunflower(std::vector<VertexSet>{{1, 2, 3}, {1, 2, 4}, {1, 2, 5}});
  ASSERT_TRUE(a);
  EXPECT_EQ(a.witness->center, (VertexSet{1, 2}));
  auto b = is_sunflower(std::vector<VertexSet>{{1, 2, 3}, {4, 5, 6}});
  ASSERT_TRUE(b);
  EXPECT_TRUE(b.witness->center.empty());
  auto c = is_sunflower(std::vector<VertexSet>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}});
  EXPECT_FALSE(c);
  EXPECT_FALSE(c.failure.empty());
  EXPECT_NE(c.violating.first, c.violating.second);
  EXPECT_THROW(is_sunflower(std::vector<VertexSet>{{1, 2, 3}}), ParameterError);
}

TEST(Sunflower, FindExamples) {
  const auto star = build_star(9, 3);
  auto w = find_sunflower(star, {1}, 4);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->petals.size(), 4U);
  EXPECT_TRUE(is_sunflower(w->petals));
  EXPECT_EQ(w->center, (VertexSet{1}));
  EXPECT_FALSE(find_sunflower(star, {1}, 5));

  Hypergraph two(4, 3, {{1, 2, 3}, {1, 2, 4}});
  EXPECT_FALSE(find_sunflower(two, {1, 2}, 3));
  EXPECT_FALSE(find_sunflower(Hypergraph(3, 3, {{1, 2, 3}}), {1, 2}, 2));
  EXPECT_THROW(find_sunflower(two, {1, 2}, 1), ParameterError);
}

TEST(SunflowerProperty, FindMatchesOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = gen::uniform(rng, 2, 4);
    const int n = gen::uniform(rng, k + 1, 9);
    const auto h = gen::random_hypergraph(rng, n, k, 0.35);
    const int csize = gen::uniform(rng, 0, k - 1);
    auto center = gen::permutation(rng, n);
    center.resize(static_cast<std::size_t>(csize));
    std::sort(center.begin(), center.end());
    const int s = gen::uniform(rng, 2, 4);
    const auto got = find_sunflower(h, center, s);
    EXPECT_EQ(got.has_value(), oracle::has_sunflower(oracle::to_family(h.edges()), oracle::to_set(center), s));
    if (got) {
      ASSERT_EQ(got->petals.size(), static_cast<std::size_t>(s));
      auto chk = is_sunflower(got->petals);
      ASSERT_TRUE(chk);
      EXPECT_EQ(chk.witness->center, center);
      for (const auto& p : got->petals) EXPECT_TRUE(h.contains(p));
    }
  }
}

TEST(AvdValidators, Examples) {
  auto w = example_witness();
  EXPECT_TRUE(is_semi_avb(w));
  EXPECT_TRUE(is_avd(w, 2));
  EXPECT_FALSE(is_avd(w, 3));

  auto bad = w;
  bad.groups[0] = {{2, 3, 4}};
  EXPECT_FALSE(is_semi_avb(bad));

  auto overlap = w;
  overlap.groups[0] = {{3, 4, 5}};
  overlap.groups[1] = {{1, 2, 5}};
  EXPECT_TRUE(is_semi_avb(overlap));
  EXPECT_FALSE(is_avd(overlap, 2));

  auto empty_group = w;
  empty_group.groups[1].clear();
  EXPECT_THROW(is_semi_avb(empty_group), ParameterError);

  AvdWitness three;
  three.host = {1, 2, 3};
  three.blocks = {{1}, {2}, {3}};
  three.groups = {{{2, 3, 4}}, {{1, 3, 5}}, {{1, 2, 6}}};
  EXPECT_TRUE(is_avd(three, 3));
}

TEST(AvdValidators, ShapeErrors) {
  auto w = example_witness();
  auto one_block = w;
  one_block.blocks = {{1, 2, 3}};
  one_block.groups = {{{4, 5, 6}}};
  EXPECT_THROW(is_semi_avb(one_block), ParameterError);
  auto overlap = w;
  overlap.blocks = {{1, 2}, {2}};
  EXPECT_THROW(is_semi_avb(overlap), ParameterError);
  auto outside = w;
  outside.blocks = {{1, 2}, {4}};
  EXPECT_THROW(is_semi_avb(outside), ParameterError);
  auto wrong_size = w;
  wrong_size.groups[0] = {{3, 4}};
  EXPECT_THROW(is_semi_avb(wrong_size), ParameterError);
}

TEST(CompleteSemi, PreconditionArithmetic) {
  // a = (2,1), c = (1,2): the second group needs c_2 >= b_2 + a_1 b_1 = 3.
  AvdWitness semi;
  semi.host = {1, 2, 3};
  semi.blocks = {{1, 2}, {3}};
  semi.groups = {{{3, 4, 5}}, {{1, 2, 4}, {1, 2, 6}}};
  ASSERT_TRUE(is_semi_avb(semi));
  EXPECT_THROW(complete_semi(semi, std::vector<int>{1, 1}), PreconditionError);

  semi.groups[1].push_back({1, 2, 7});
  const auto full = complete_semi(semi, std::vector<int>{1, 1});
  EXPECT_TRUE(is_avd(full, 2));
  EXPECT_EQ(full.groups[1], (std::vector<VertexSet>{{1, 2, 6}}));
  EXPECT_THROW(complete_semi(semi, std::vector<int>{1}), ParameterError);
  EXPECT_THROW(complete_semi(semi, std::vector<int>{0, 1}), ParameterError);
}

TEST(CompleteSemiProperty, AlwaysSucceedsUnderPrecondition) {
  std::mt19937_64 rng(22);
  const std::vector<std::vector<int>> shapes{{2, 1}, {2, 2}, {3, 1}, {2, 1, 1}, {1, 1, 1}, {1, 3}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& a = shapes[static_cast<std::size_t>(trial) % shapes.size()];
    std::vector<int> b, c;
    int prefix = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      b.push_back(gen::uniform(rng, 1, 3));
      c.push_back(b.back() + prefix + gen::uniform(rng, 0, 2));
      prefix += a[i] * b.back();
    }
    const auto semi = gen::random_semi(rng, a, c);
    ASSERT_TRUE(is_semi_avb(semi)) << is_semi_avb(semi).detail;
    const auto full = complete_semi(semi, b);
    int d = 0;
    for (int x : b) d += x;
    EXPECT_TRUE(is_avd(full, d)) << is_avd(full, d).detail;
    EXPECT_EQ(full.b(), b);
    EXPECT_EQ(full.host, semi.host);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (const auto& e : full.groups[i])
        EXPECT_NE(std::find(semi.groups[i].begin(), semi.groups[i].end(), e), semi.groups[i].end());
  }
}

TEST(FindAvd, StarHasNone) {
  const std::vector<int> a{2, 1};
  auto r = find_avd_system(build_star(6, 3), a, 2);
  EXPECT_EQ(r.status, SearchStatus::none);
}

TEST(FindAvd, ParameterChecks) {
  const auto star = build_star(6, 3);
  EXPECT_THROW(find_avd_system(star, std::vector<int>{3}, 2), ParameterError);
  EXPECT_THROW(find_avd_system(star, std::vector<int>{2, 2}, 2), ParameterError);
  EXPECT_THROW(find_avd_system(star, std::vector<int>{2, 1}, 1), ParameterError);
  EXPECT_THROW(find_avd_system(star, std::vector<int>{3, 0}, 2), ParameterError);
}

TEST(FindAvd, BudgetExhaustionIsExplicit) {
  const std::vector<int> a{1, 1, 1};
  auto r = find_avd_system(complete_hypergraph(8, 3), a, 5, SearchOptions{3, 1});
  EXPECT_EQ(r.status, SearchStatus::budget_exhausted);
  EXPECT_FALSE(r.witness);
  EXPECT_EQ(r.nodes, 3U);
}

TEST(FindAvdProperty, MatchesOracle) {
  std::mt19937_64 rng(23);
  const std::vector<std::pair<std::vector<int>, int>> cases{{{2, 1}, 2}, {{1, 1, 1}, 3}, {{2, 1}, 3}, {{1, 2}, 2}};
  for (int trial = 0; trial < 120; ++trial) {
    const auto& [a, d] = cases[static_cast<std::size_t>(trial) % cases.size()];
    const int n = gen::uniform(rng, 5, 7);
    const auto h = gen::random_edges(rng, n, 3, gen::uniform(rng, 3, 10));
    const auto r = find_avd_system(h, a, d);
    ASSERT_NE(r.status, SearchStatus::budget_exhausted);
    EXPECT_EQ(r.found(), oracle::has_avd(oracle::to_family(h.edges()), a, d)) << serialize_hypergraph(h);
    if (r.witness) {
      EXPECT_TRUE(is_avd(*r.witness, d)) << is_avd(*r.witness, d).detail;
      EXPECT_EQ(r.witness->a(), a);
      for (const auto& e : r.witness->edges()) EXPECT_TRUE(h.contains(e));
    }
  }
}

TEST(FindAvdProperty, PlantedSystemsAreFound) {
  std::mt19937_64 rng(24);
  const std::vector<std::vector<int>> shapes{{2, 1}, {1, 1, 1}, {2, 2}, {3, 1}};
  for (int trial = 0; trial < 40; ++trial) {
    const auto& a = shapes[static_cast<std::size_t>(trial) % shapes.size()];
    std::vector<int> b;
    for (std::size_t i = 0; i < a.size(); ++i) b.push_back(gen::uniform(rng, 1, 2));
    int d = 0;
    for (int x : b) d += x;
    const auto w = gen::random_avd(rng, a, b, 3);
    const int n = gen::vertex_count(w) + 3;
    const int k = static_cast<int>(w.host.size());
    auto noise = gen::random_hypergraph(rng, n, k, 0.05).edges();
    for (const auto& e : w.edges())
      if (std::find(noise.begin(), noise.end(), e) == noise.end()) noise.push_back(e);
    const Hypergraph h(n, k, noise);
    const auto r = find_avd_system(h, a, d);
    ASSERT_TRUE(r.found()) << "trial " << trial;
    EXPECT_TRUE(is_avd(*r.witness, d));
  }
}

TEST(FindAvdProperty, MonotoneUnderSubgraphs) {
  std::mt19937_64 rng(25);
  const std::vector<int> a{2, 1};
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = gen::random_edges(rng, 7, 3, gen::uniform(rng, 4, 14));
    if (find_avd_system(h, a, 2).found()) continue;
    std::vector<EdgeIndex> keep;
    for (EdgeIndex e = 0; e < h.size(); ++e)
      if (rng() % 3) keep.push_back(e);
    EXPECT_FALSE(find_avd_system(h.subgraph(keep), a, 2).found());
  }
}

TEST(FindAvdProperty, ThreadCountDoesNotChangeOutcome) {
  std::mt19937_64 rng(26);
  const std::vector<int> a{1, 1, 1};
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = gen::random_edges(rng, 8, 3, gen::uniform(rng, 6, 30));
    const auto one = find_avd_system(h, a, 3, SearchOptions{100000, 1});
    const auto four = find_avd_system(h, a, 3, SearchOptions{100000, 4});
    EXPECT_EQ(one.status, four.status);
    EXPECT_EQ(one.nodes, four.nodes);
    if (one.witness) {
      EXPECT_EQ(one.witness->host, four.witness->host);
      EXPECT_EQ(one.witness->groups, four.witness->groups);
    }
  }
}

// Host plus p >= 3 groups is a non-trivial (p-1)-wise intersecting family of d+1 edges.
TEST(AvdProperty, ThreeGroupSystemsAreNontrivialIntersecting) {
  std::mt19937_64 rng(27);
  const std::vector<std::vector<int>> shapes{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {2, 2, 1}, {1, 1, 1, 1}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto& a = shapes[static_cast<std::size_t>(trial) % shapes.size()];
    std::vector<int> b;
    for (std::size_t i = 0; i < a.size(); ++i) b.push_back(gen::uniform(rng, 1, 3));
    int d = 0;
    for (int x : b) d += x;
    const auto w = gen::random_avd(rng, a, b);
    ASSERT_TRUE(is_avd(w, d));
    const auto edges = w.edges();
    EXPECT_EQ(edges.size(), static_cast<std::size_t>(d + 1));
    const int p = static_cast<int>(a.size());
    EXPECT_TRUE(is_nontrivial(edges, p - 1));
    EXPECT_TRUE(oracle::nontrivial(oracle::to_family(edges), p - 1));
    const auto res = residue_vertices(w);
    EXPECT_EQ(std::set<int>(res.begin(), res.end()).size(), res.size());
  }
}
