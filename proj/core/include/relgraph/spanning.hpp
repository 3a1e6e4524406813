#pragma once

#include <vector>

#include "relgraph/bigint.hpp"
#include "relgraph/graph.hpp"

namespace relgraph {

/// Matrix-tree theorem by fraction-free elimination. 0 if disconnected;
/// parallel edges count separately, loops are ignored.
BigInt tree_number(const Multigraph& g);

BigInt tree_number_minus_edge(const Multigraph& g, EdgeId e);

struct TreeBalance {
  bool balanced = true;
  EdgeId max_edge = 0;  // an edge maximizing T(G - e)
  EdgeId min_edge = 0;  // an edge minimizing T(G - e)
  BigInt max_value = 0;
  BigInt min_value = 0;
};

TreeBalance is_tree_balanced(const Multigraph& g);

// Tree number of a subdivision as a polynomial in the base chain length c:
// chain e has c + r_e edges. coefficients[i] multiplies c^i.
struct TreePoly {
  int r = 0;  // redundancy of the structure graph
  std::vector<BigInt> coefficients;

  BigInt evaluate(const BigInt& c) const;
};

TreePoly tree_poly(const Multigraph& s, const std::vector<int>& offsets);

/// Sum over spanning trees T of s of the product of lengths of the edges
/// outside T; this is the tree number of the subdivision.
BigInt tree_number_of_subdivision(const Multigraph& s, const std::vector<int>& lengths);

}  // namespace relgraph
