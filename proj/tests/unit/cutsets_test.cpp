#include <gtest/gtest.h>

#include <random>
#include <set>

#include "../oracles.hpp"
#include "relgraph/cutsets.hpp"
#include "relgraph/graph_io.hpp"

using namespace relgraph;

namespace {

// Minimal cuts by definition: disconnecting, and no proper subset disconnects.
// Equivalently, removal leaves two components and re-adding any edge joins them.
std::set<EdgeMask> oracle_minimal_cuts(const Multigraph& g, int max_k) {
  std::set<EdgeMask> out;
  const int m = g.edge_count();
  for (EdgeMask x = 1; x < (EdgeMask{1} << m); ++x) {
    if (__builtin_popcountll(x) > max_k || !oracle::disconnects(g, x)) continue;
    bool minimal = true;
    for (int e = 0; e < m && minimal; ++e)
      if (x >> e & 1) minimal = !oracle::disconnects(g, x & ~(EdgeMask{1} << e));
    if (minimal) out.insert(x);
  }
  return out;
}

}  // namespace

TEST(Cutsets, DisconnectingSetsMatchSubsetScan) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::random_connected(rng, std::uniform_int_distribution<int>(3, 8)(rng), 13);
    const auto sets = enumerate_disconnecting_sets(g, 5);
    std::vector<EdgeMask> expected;
    for (int k = 1; k <= 5; ++k)
      for (EdgeMask x = 1; x < (EdgeMask{1} << 13); ++x)
        if (__builtin_popcountll(x) == k && oracle::disconnects(g, x)) expected.push_back(x);
    ASSERT_EQ(sets.size(), expected.size());
    const auto minimal = oracle_minimal_cuts(g, 5);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      EXPECT_EQ(sets[i].edges, expected[i]);
      EXPECT_EQ(sets[i].minimal, minimal.count(sets[i].edges) == 1);
    }
  }
}

TEST(Cutsets, MinimalCutsMatchDefinition) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::random_connected(rng, std::uniform_int_distribution<int>(3, 9)(rng), 14);
    const auto expected = oracle_minimal_cuts(g, 14);
    std::set<EdgeMask> got;
    for (const auto& c : minimal_cuts(g, -1)) {
      EXPECT_TRUE(c.minimal);
      EXPECT_EQ(c.edges, boundary(g, c.skeleton));
      got.insert(c.edges);
    }
    EXPECT_EQ(got, expected);
  }
}

TEST(Cutsets, SkeletonIsTheSmallerSide) {
  const auto g = oracle::petersen();
  for (const auto& c : minimal_cuts(g, 6)) {
    const int side = __builtin_popcountll(c.skeleton);
    EXPECT_LE(side, 5);
    if (side == 5) EXPECT_TRUE(c.skeleton & 1);
  }
}

TEST(Cutsets, TrivialCutsOfPetersen) {
  const auto g = oracle::petersen();
  int trivial3 = 0, trivial4 = 0, nontrivial5 = 0;
  for (const auto& c : minimal_cuts(g, 5)) {
    ASSERT_TRUE(c.trivial.has_value());
    if (c.size == 3 && *c.trivial) ++trivial3;
    if (c.size == 4 && *c.trivial) ++trivial4;
    if (c.size == 5 && !*c.trivial) ++nontrivial5;
  }
  EXPECT_EQ(trivial3, 10);  // vertex stars
  EXPECT_EQ(trivial4, 15);  // edge neighbourhoods
  EXPECT_EQ(nontrivial5, 6);  // the six pairs of disjoint pentagons
  EXPECT_EQ(g_free(g), 5);
}

TEST(Cutsets, NontrivialWitnesses) {
  // Two triangles joined by a matching: the matching is a 3-cut around a cycle.
  const auto prism = oracle::prism();
  const auto report = has_nontrivial_cutsets_up_to(prism, 4);
  EXPECT_EQ(report.bound, 4);
  ASSERT_EQ(report.witnesses.size(), 1U);
  EXPECT_EQ(report.witnesses[0].size, 3);
  EXPECT_FALSE(report.witnesses[0].skeleton_is_tree);
  EXPECT_EQ(report.g_free, 3);

  const auto k4 = has_nontrivial_cutsets_up_to(oracle::k4());
  EXPECT_TRUE(k4.witnesses.empty());
  EXPECT_EQ(k4.g_free, 7);

  const auto heawood = has_nontrivial_cutsets_up_to(oracle::heawood());
  EXPECT_EQ(heawood.bound, 6);
  EXPECT_TRUE(heawood.witnesses.empty());
  EXPECT_EQ(g_free(oracle::heawood()), 6);
}

TEST(Cutsets, Girth6FamilyHasNoSmallNontrivialCuts) {
  for (int n = 14; n <= 24; n += 2) EXPECT_TRUE(has_nontrivial_cutsets_up_to(girth6_family(n)).witnesses.empty()) << n;
}

TEST(Cutsets, InducedCutSizeOfTreeSkeletons) {
  // A tree skeleton on t vertices in a k-regular graph has t(k-2)+2 boundary edges.
  const auto g = oracle::heawood();
  for (const auto& c : minimal_cuts(g, 7)) {
    if (!c.skeleton_is_tree) continue;
    EXPECT_EQ(c.size, __builtin_popcountll(c.skeleton) + 2);
  }
}
