#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "relgraph/spanning.hpp"
#include "relgraph/structure.hpp"

using namespace relgraph;

TEST(Spanning, TreeNumbersOfNamedGraphs) {
  EXPECT_EQ(tree_number(oracle::k4()), 16);
  EXPECT_EQ(tree_number(oracle::petersen()), 2000);
  EXPECT_EQ(tree_number(oracle::k33()), 81);
  EXPECT_EQ(tree_number(oracle::wagner()), 392);
  EXPECT_EQ(tree_number(oracle::theta()), 3);
  EXPECT_EQ(tree_number(oracle::from_pairs(3, {{0, 1}})), 0);
}

TEST(Spanning, MatrixTreeMatchesEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_connected(rng, std::uniform_int_distribution<int>(2, 8)(rng), 14);
    EXPECT_EQ(tree_number(g), oracle::spanning_trees(g));
    const int e = std::uniform_int_distribution<int>(0, g.edge_count() - 1)(rng);
    Multigraph minus(g.vertex_count());
    for (int f = 0; f < g.edge_count(); ++f)
      if (f != e) minus.add_edge(g.edge(f).u, g.edge(f).v);
    EXPECT_EQ(tree_number_minus_edge(g, e), oracle::spanning_trees(minus));
  }
}

TEST(Spanning, TreeBalance) {
  EXPECT_TRUE(is_tree_balanced(oracle::petersen()).balanced);
  EXPECT_TRUE(is_tree_balanced(oracle::heawood()).balanced);
  const auto w = is_tree_balanced(oracle::wagner());
  EXPECT_FALSE(w.balanced);
  EXPECT_GT(w.max_value, w.min_value);
  EXPECT_EQ(w.max_value, tree_number_minus_edge(oracle::wagner(), w.max_edge));
  EXPECT_EQ(w.min_value, tree_number_minus_edge(oracle::wagner(), w.min_edge));
}

TEST(Spanning, TreePolyMatchesSubdivision) {
  std::mt19937_64 rng(41);
  for (const auto& s : {oracle::theta(), oracle::k4(), oracle::k33(), oracle::wagner()}) {
    std::vector<int> offsets(static_cast<std::size_t>(s.edge_count()));
    for (auto& o : offsets) o = std::uniform_int_distribution<int>(-1, 2)(rng);
    const auto poly = tree_poly(s, offsets);
    EXPECT_EQ(static_cast<int>(poly.coefficients.size()) - 1, s.redundancy());
    for (int c : {2, 3, 4}) {
      std::vector<int> lengths;
      for (int o : offsets) lengths.push_back(c + o);
      const auto sub = subdivide(s, lengths);
      EXPECT_EQ(poly.evaluate(c), tree_number_of_subdivision(s, lengths));
      if (sub.edge_count() <= 22) EXPECT_EQ(poly.evaluate(c), oracle::spanning_trees(sub));
      EXPECT_EQ(poly.evaluate(c), tree_number(sub));
    }
  }
}

TEST(Spanning, LeadingCoefficientCountsSpanningTreeComplements) {
  // c^r multiplies the number of spanning trees of s.
  const auto s = oracle::petersen();
  const auto poly = tree_poly(s, std::vector<int>(15, 0));
  EXPECT_EQ(poly.coefficients.back(), 2000);
}
