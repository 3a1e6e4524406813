#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relgraph/graph.hpp"

namespace relgraph {

struct CutRecord {
  EdgeMask edges = 0;
  int size = 0;
  bool minimal = false;
  // Smaller side of a minimal cut (ties: the side holding vertex 0). For
  // non-minimal sets, the smallest component under the same tie rule.
  VertexMask skeleton = 0;
  bool skeleton_is_tree = false;
  // Set only for regular graphs, where triviality is defined.
  std::optional<bool> trivial;
};

struct TrivialityReport {
  int bound = 0;  // cut sizes strictly below this were examined for witnesses
  // Size of the smallest non-trivial minimal cut divided by (k - 2), rounded
  // down; m + 1 when the graph has none at all.
  int g_free = 0;
  std::vector<CutRecord> witnesses;  // smallest non-trivial cuts below bound
};

struct EnumerationLimits {
  std::uint64_t max_work = std::uint64_t{1} << 28;
};

/// Edges with exactly one endpoint in `side`.
EdgeMask boundary(const Multigraph& g, VertexMask side);

/// Every edge subset of size 1..max_k whose removal disconnects g, sorted by
/// (size, mask).
std::vector<CutRecord> enumerate_disconnecting_sets(const Multigraph& g, int max_k,
                                                    const EnumerationLimits& limits = {});

/// Minimal cuts with at most max_k edges, found by growing connected
/// skeletons. max_k < 0 means no size limit. Sorted by (size, mask).
std::vector<CutRecord> minimal_cuts(const Multigraph& g, int max_k,
                                    const EnumerationLimits& limits = {});

/// Tree skeleton with at most girth - 1 vertices. Regular graphs only.
bool classify_trivial(const Multigraph& g, const CutRecord& cut);

/// bound defaults to the girth when <= 0.
TrivialityReport has_nontrivial_cutsets_up_to(const Multigraph& g, int bound = 0);

int g_free(const Multigraph& g);

}  // namespace relgraph
