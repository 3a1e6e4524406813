#include "relgraph/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "relgraph/bigint.hpp"
#include "relgraph/error.hpp"

namespace relgraph {

// ---------------------------------------------------------------------------
// BigInt helpers (kept here to avoid a translation unit of their own).

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::uint64_t binomial_u64(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 67>, 67> t{};
    for (std::size_t i = 0; i < 67; ++i) {
      t[i][0] = 1;
      for (std::size_t j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > 66) throw ResourceError("binomial_u64 supports n <= 66");
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::vector<std::string> to_decimal(const std::vector<BigInt>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

// ---------------------------------------------------------------------------

Multigraph::Multigraph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 1) throw InputError("graph must have at least one vertex");
}

Multigraph::Multigraph(int vertex_count, std::vector<Edge> edges) : Multigraph(vertex_count) {
  edges_.reserve(edges.size());
  for (const auto& e : edges) add_edge(e.u, e.v);
}

EdgeId Multigraph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw InputError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                     std::to_string(v) + ") with n = " + std::to_string(n_));
  }
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v});
  return static_cast<EdgeId>(edges_.size() - 1);
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

std::vector<std::vector<EdgeId>> Multigraph::incidence() const {
  std::vector<std::vector<EdgeId>> inc(static_cast<std::size_t>(n_));
  for (EdgeId id = 0; id < edge_count(); ++id) {
    const auto& e = edges_[static_cast<std::size_t>(id)];
    inc[static_cast<std::size_t>(e.u)].push_back(id);
    inc[static_cast<std::size_t>(e.v)].push_back(id);
  }
  return inc;
}

bool Multigraph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool Multigraph::has_parallel_edges() const {
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::vector<EdgeId> Multigraph::canonical_order() const {
  std::vector<EdgeId> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    const auto& ea = edges_[static_cast<std::size_t>(a)];
    const auto& eb = edges_[static_cast<std::size_t>(b)];
    return std::tie(ea.v, ea.u) < std::tie(eb.v, eb.u);
  });
  return order;
}

Multigraph Multigraph::canonical() const {
  Multigraph out(n_);
  for (EdgeId id : canonical_order()) {
    const auto& e = edges_[static_cast<std::size_t>(id)];
    out.add_edge(e.u, e.v);
  }
  return out;
}

Multigraph Multigraph::without_edges(EdgeMask removed) const {
  Multigraph out(n_);
  for (EdgeId id = 0; id < edge_count(); ++id) {
    if (id < 64 && (removed >> id) & 1U) continue;
    const auto& e = edges_[static_cast<std::size_t>(id)];
    out.add_edge(e.u, e.v);
  }
  return out;
}

// ---------------------------------------------------------------------------

ConnectivityKernel::ConnectivityKernel(const Multigraph& g) : n_(g.vertex_count()) {
  if (g.edge_count() > kMaxMaskEdges) {
    throw ResourceError("mask kernels support at most " + std::to_string(kMaxMaskEdges) +
                        " edges, got " + std::to_string(g.edge_count()));
  }
  if (n_ > 64) throw ResourceError("mask kernels support at most 64 vertices");
  for (const auto& e : g.edges()) {
    us_.push_back(static_cast<std::uint8_t>(e.u));
    vs_.push_back(static_cast<std::uint8_t>(e.v));
  }
}

EdgeMask ConnectivityKernel::all_edges() const {
  const int m = edge_count();
  return m == 64 ? ~EdgeMask{0} : ((EdgeMask{1} << m) - 1);
}

namespace {

inline int find_root(std::array<std::uint8_t, 64>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    auto& p = parent[static_cast<std::size_t>(x)];
    p = parent[p];
    x = p;
  }
  return x;
}

}  // namespace

bool ConnectivityKernel::connected(EdgeMask working) const {
  if (n_ <= 1) return true;
  if (std::popcount(working) < n_ - 1) return false;
  std::array<std::uint8_t, 64> parent;
  for (int i = 0; i < n_; ++i) parent[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  int merges = 0;
  while (working) {
    const int e = std::countr_zero(working);
    working &= working - 1;
    int a = find_root(parent, us_[static_cast<std::size_t>(e)]);
    int b = find_root(parent, vs_[static_cast<std::size_t>(e)]);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
      if (++merges == n_ - 1) return true;
    }
  }
  return false;
}

int ConnectivityKernel::components(EdgeMask working, std::span<int> label) const {
  std::array<std::uint8_t, 64> parent;
  for (int i = 0; i < n_; ++i) parent[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  while (working) {
    const int e = std::countr_zero(working);
    working &= working - 1;
    int a = find_root(parent, us_[static_cast<std::size_t>(e)]);
    int b = find_root(parent, vs_[static_cast<std::size_t>(e)]);
    if (a != b) parent[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
  }
  std::array<int, 64> root_label;
  root_label.fill(-1);
  int count = 0;
  for (int v = 0; v < n_; ++v) {
    const int r = find_root(parent, v);
    if (root_label[static_cast<std::size_t>(r)] < 0) root_label[static_cast<std::size_t>(r)] = count++;
    label[static_cast<std::size_t>(v)] = root_label[static_cast<std::size_t>(r)];
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> bfs_distances(const Multigraph& g, const std::vector<std::vector<EdgeId>>& inc,
                               std::span<const Vertex> sources) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (dist[static_cast<std::size_t>(s)] < 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (EdgeId id : inc[static_cast<std::size_t>(x)]) {
      const Vertex y = g.edge(id).other(x);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace

bool is_connected(const Multigraph& g) {
  const auto inc = g.incidence();
  const Vertex root = 0;
  const auto dist = bfs_distances(g, inc, std::span<const Vertex>(&root, 1));
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::optional<int> regular_degree(const Multigraph& g) {
  const auto deg = g.degrees();
  if (std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) != deg.end()) {
    return std::nullopt;
  }
  return deg.front();
}

std::optional<int> girth(const Multigraph& g) {
  if (g.has_loops()) return 1;
  if (g.has_parallel_edges()) return 2;
  const int n = g.vertex_count();
  const auto inc = g.incidence();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<EdgeId> via(static_cast<std::size_t>(n));
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(root)] = 0;
    via[static_cast<std::size_t>(root)] = -1;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      const int dx = dist[static_cast<std::size_t>(x)];
      if (2 * dx + 1 >= best) break;
      for (EdgeId id : inc[static_cast<std::size_t>(x)]) {
        if (id == via[static_cast<std::size_t>(x)]) continue;
        const Vertex y = g.edge(id).other(x);
        const int dy = dist[static_cast<std::size_t>(y)];
        if (dy < 0) {
          dist[static_cast<std::size_t>(y)] = dx + 1;
          via[static_cast<std::size_t>(y)] = id;
          queue.push_back(y);
        } else {
          best = std::min(best, dx + dy + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

namespace {

// Unit-capacity max flow between s and t on the undirected multigraph.
int local_edge_connectivity(const Multigraph& g, const std::vector<std::vector<EdgeId>>& inc,
                            Vertex s, Vertex t) {
  const int m = g.edge_count();
  // flow[e] in {-1, 0, 1}: direction relative to (u -> v).
  std::vector<int> flow(static_cast<std::size_t>(m), 0);
  int total = 0;
  const int n = g.vertex_count();
  std::vector<EdgeId> pred(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n));
  while (true) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[static_cast<std::size_t>(s)] = 1;
    std::deque<Vertex> queue{s};
    while (!queue.empty() && !seen[static_cast<std::size_t>(t)]) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (EdgeId id : inc[static_cast<std::size_t>(x)]) {
        const auto& e = g.edge(id);
        if (e.is_loop()) continue;
        const Vertex y = e.other(x);
        if (seen[static_cast<std::size_t>(y)]) continue;
        const int dir = (x == e.u) ? 1 : -1;
        // Residual capacity along x->y is 1 - dir*flow for an undirected unit edge.
        if (flow[static_cast<std::size_t>(id)] * dir >= 1) continue;
        seen[static_cast<std::size_t>(y)] = 1;
        pred[static_cast<std::size_t>(y)] = id;
        queue.push_back(y);
      }
    }
    if (!seen[static_cast<std::size_t>(t)]) break;
    for (Vertex y = t; y != s;) {
      const EdgeId id = pred[static_cast<std::size_t>(y)];
      const auto& e = g.edge(id);
      const Vertex x = e.other(y);
      flow[static_cast<std::size_t>(id)] += (x == e.u) ? 1 : -1;
      y = x;
    }
    ++total;
  }
  return total;
}

}  // namespace

int edge_connectivity(const Multigraph& g) {
  if (g.vertex_count() <= 1) return 0;
  if (!is_connected(g)) return 0;
  const auto inc = g.incidence();
  int best = std::numeric_limits<int>::max();
  for (Vertex t = 1; t < g.vertex_count(); ++t) {
    best = std::min(best, local_edge_connectivity(g, inc, 0, t));
  }
  return best;
}

int edge_distance(const Multigraph& g, EdgeId e1, EdgeId e2) {
  if (e1 < 0 || e2 < 0 || e1 >= g.edge_count() || e2 >= g.edge_count()) {
    throw InputError("edge id out of range");
  }
  if (e1 == e2) return 0;
  const auto inc = g.incidence();
  const Edge a = g.edge(e1);
  const std::array<Vertex, 2> sources{a.u, a.v};
  const auto dist = bfs_distances(g, inc, sources);
  const Edge b = g.edge(e2);
  const int du = dist[static_cast<std::size_t>(b.u)];
  const int dv = dist[static_cast<std::size_t>(b.v)];
  if (du < 0 && dv < 0) throw InputError("edges lie in different components");
  const int d = (du < 0) ? dv : (dv < 0 ? du : std::min(du, dv));
  return d + 1;
}

std::vector<int> edge_distance_matrix(const Multigraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const auto inc = g.incidence();
  std::vector<std::vector<int>> vdist(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    vdist[static_cast<std::size_t>(v)] = bfs_distances(g, inc, std::span<const Vertex>(&v, 1));
  }
  auto vd = [&](Vertex x, Vertex y) {
    const int d = vdist[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    return d < 0 ? std::numeric_limits<int>::max() / 2 : d;
  };
  std::vector<int> out(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  for (EdgeId i = 0; i < m; ++i) {
    for (EdgeId j = i + 1; j < m; ++j) {
      const Edge a = g.edge(i);
      const Edge b = g.edge(j);
      const int d = 1 + std::min({vd(a.u, b.u), vd(a.u, b.v), vd(a.v, b.u), vd(a.v, b.v)});
      out[static_cast<std::size_t>(i * m + j)] = d;
      out[static_cast<std::size_t>(j * m + i)] = d;
    }
  }
  return out;
}

Multigraph girth6_family(int n) {
  if (n < 14 || n % 2 != 0) {
    throw InputError("girth6_family requires an even vertex count >= 14, got " + std::to_string(n));
  }
  Multigraph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  for (Vertex i = 0; i < n; i += 2) g.add_edge(i, (i + 5) % n);
  return g;
}

GraphMetrics compute_metrics(const Multigraph& g) {
  GraphMetrics out;
  out.vertex_count = g.vertex_count();
  out.edge_count = g.edge_count();
  out.girth = girth(g);
  out.connected = is_connected(g);
  out.edge_connectivity = edge_connectivity(g);
  const auto deg = g.degrees();
  out.min_degree = *std::min_element(deg.begin(), deg.end());
  out.max_degree = *std::max_element(deg.begin(), deg.end());
  out.regular_degree = regular_degree(g);
  out.redundancy = g.redundancy();
  out.simple = g.is_simple();
  return out;
}

}  // namespace relgraph
