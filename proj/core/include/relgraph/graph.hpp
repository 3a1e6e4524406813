#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace relgraph {

using Vertex = int;
using EdgeId = int;

// Dense bitmask over edge ids (bit e set <=> edge e in the set).
using EdgeMask = std::uint64_t;
// Dense bitmask over vertex ids.
using VertexMask = std::uint64_t;

// Mask-based kernels address edges by bit position.
inline constexpr int kMaxMaskEdges = 63;

inline constexpr EdgeMask edge_bit(int e) { return EdgeMask{1} << e; }

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool is_loop() const { return u == v; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return u == x || v == x; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected multigraph on vertices 0..n-1. Edges keep their insertion order
// and each edge's id is its position in that order. Endpoints are stored with
// u <= v. Loops are representable but rejected by the analysis operations.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int vertex_count);
  Multigraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  EdgeId add_edge(Vertex u, Vertex v);

  std::vector<int> degrees() const;
  // incidence()[v] lists the ids of edges touching v; a loop appears twice.
  std::vector<std::vector<EdgeId>> incidence() const;

  bool has_loops() const;
  bool has_parallel_edges() const;
  bool is_simple() const { return !has_loops() && !has_parallel_edges(); }
  int redundancy() const { return edge_count() - vertex_count() + 1; }

  // Same graph with edges sorted by (v, u): the order graph6/sparse6 decode to.
  Multigraph canonical() const;
  // Permutation p with canonical().edge(i) == edge(p[i]).
  std::vector<EdgeId> canonical_order() const;

  Multigraph without_edges(EdgeMask removed) const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Union-find connectivity test for spanning subgraphs given as edge masks.
// Built once per graph and reused across many subsets.
class ConnectivityKernel {
 public:
  explicit ConnectivityKernel(const Multigraph& g);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(us_.size()); }
  EdgeMask all_edges() const;

  // True iff the spanning subgraph keeping exactly `working` is connected.
  bool connected(EdgeMask working) const;
  // Component label per vertex of the spanning subgraph on `working`.
  int components(EdgeMask working, std::span<int> label) const;

 private:
  int n_;
  std::vector<std::uint8_t> us_, vs_;
};

struct GraphMetrics {
  int vertex_count = 0;
  int edge_count = 0;
  std::optional<int> girth;  // nullopt for forests
  int edge_connectivity = 0;
  int min_degree = 0;
  int max_degree = 0;
  std::optional<int> regular_degree;
  int redundancy = 0;
  bool connected = false;
  bool simple = false;
};

GraphMetrics compute_metrics(const Multigraph& g);

bool is_connected(const Multigraph& g);
std::optional<int> regular_degree(const Multigraph& g);

/// Length of a shortest cycle; loops count 1 and parallel pairs 2.
std::optional<int> girth(const Multigraph& g);

/// Minimum number of edges whose removal disconnects g (0 if disconnected).
int edge_connectivity(const Multigraph& g);

/// 1 + the vertex distance between the closest endpoints of e1 and e2; 0 when
/// e1 == e2. Edges sharing a vertex are at distance 1.
int edge_distance(const Multigraph& g, EdgeId e1, EdgeId e2);

/// All pairwise edge distances, row-major m x m.
std::vector<int> edge_distance_matrix(const Multigraph& g);

/// Cycle 0..n-1 with chords {i, i+5 mod n} for every even i. Cubic with
/// girth 6 for even n >= 14.
Multigraph girth6_family(int n);

}  // namespace relgraph
