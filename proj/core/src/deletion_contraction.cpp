// Counts connected spanning subgraphs by edge count. Every edge carries a pair
// of polynomials in x (x marks a working original edge): `fail` counts the
// ways the edge's bundle leaves its ends unjoined, `work` the ways it joins
// them. A plain edge starts as (1, x).

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>

#include "relgraph/error.hpp"
#include "relgraph/reliability.hpp"

namespace relgraph {

namespace {

using Poly = std::vector<std::uint64_t>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

struct WEdge {
  int u, v;
  Poly fail, work;
};

struct Net {
  int n = 0;
  std::vector<WEdge> edges;
};

class Engine {
 public:
  explicit Engine(std::uint64_t max_calls) : max_calls_(max_calls) {}

  Poly solve(Net net) {
    if (++calls_ > max_calls_) throw ResourceError("deletion-contraction call budget exceeded");
    Poly factor{1};
    if (!reduce(net, factor)) return Poly{0};
    if (net.n == 1) return factor;
    if (net.n == 2 && net.edges.size() == 1) return mul(factor, net.edges[0].work);

    const std::string key = make_key(net);
    if (auto it = memo_.find(key); it != memo_.end()) return mul(factor, it->second);

    const std::size_t pick = choose_edge(net);
    const WEdge e = net.edges[pick];

    Net deleted = net;
    deleted.edges.erase(deleted.edges.begin() + static_cast<std::ptrdiff_t>(pick));
    Net contracted = contract(net, pick);

    Poly result = add(mul(e.fail, solve(std::move(deleted))), mul(e.work, solve(std::move(contracted))));
    trim(result);
    if (memo_.size() > 2'000'000) memo_.clear();
    memo_.emplace(key, result);
    return mul(factor, result);
  }

 private:
  // Applies parallel, pendant and series reductions until none fires.
  // Returns false if the net is disconnected.
  static bool reduce(Net& net, Poly& factor) {
    for (;;) {
      bool changed = false;
      merge_parallel(net);
      std::vector<int> deg(static_cast<std::size_t>(net.n), 0);
      for (const auto& e : net.edges) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
      }
      if (net.n == 1) return true;
      for (int v = 0; v < net.n && !changed; ++v) {
        const int d = deg[static_cast<std::size_t>(v)];
        if (d == 0) return false;
        if (d == 1) {
          auto it = std::find_if(net.edges.begin(), net.edges.end(),
                                 [v](const WEdge& e) { return e.u == v || e.v == v; });
          factor = mul(factor, it->work);
          trim(factor);
          net.edges.erase(it);
          remove_vertex(net, v);
          changed = true;
        } else if (d == 2) {
          std::size_t first = net.edges.size(), second = net.edges.size();
          for (std::size_t i = 0; i < net.edges.size(); ++i) {
            if (net.edges[i].u == v || net.edges[i].v == v) (first == net.edges.size() ? first : second) = i;
          }
          WEdge& a = net.edges[first];
          WEdge& b = net.edges[second];
          const int x = a.u == v ? a.v : a.u;
          const int y = b.u == v ? b.v : b.u;
          WEdge merged{std::min(x, y), std::max(x, y), add(mul(a.fail, b.work), mul(a.work, b.fail)),
                       mul(a.work, b.work)};
          trim(merged.fail);
          trim(merged.work);
          net.edges.erase(net.edges.begin() + static_cast<std::ptrdiff_t>(second));
          net.edges[first] = std::move(merged);
          remove_vertex(net, v);
          changed = true;
        }
      }
      if (!changed) return true;
    }
  }

  static void merge_parallel(Net& net) {
    std::sort(net.edges.begin(), net.edges.end(),
              [](const WEdge& a, const WEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    std::vector<WEdge> out;
    for (auto& e : net.edges) {
      if (!out.empty() && out.back().u == e.u && out.back().v == e.v) {
        WEdge& a = out.back();
        const Poly fail = mul(a.fail, e.fail);
        Poly work = add(add(mul(a.work, e.work), mul(a.work, e.fail)), mul(a.fail, e.work));
        trim(work);
        a.fail = fail;
        a.work = std::move(work);
        trim(a.fail);
      } else {
        out.push_back(std::move(e));
      }
    }
    net.edges = std::move(out);
  }

  // Drops vertex v (already edge-free) and shifts higher labels down.
  static void remove_vertex(Net& net, int v) {
    for (auto& e : net.edges) {
      if (e.u > v) --e.u;
      if (e.v > v) --e.v;
    }
    --net.n;
  }

  static Net contract(const Net& net, std::size_t pick) {
    const int keep = net.edges[pick].u;
    const int gone = net.edges[pick].v;
    Net out;
    out.n = net.n;
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
      if (i == pick) continue;
      WEdge e = net.edges[i];
      if (e.u == gone) e.u = keep;
      if (e.v == gone) e.v = keep;
      if (e.u > e.v) std::swap(e.u, e.v);
      out.edges.push_back(std::move(e));
    }
    // Bundles parallel to the contracted edge became loops: always satisfied.
    std::vector<WEdge> kept;
    for (auto& e : out.edges) {
      if (e.u != e.v) kept.push_back(std::move(e));
    }
    out.edges = std::move(kept);
    remove_vertex(out, gone);
    return out;
  }

  // An edge at the highest-degree vertex, toward its highest-degree neighbour.
  static std::size_t choose_edge(const Net& net) {
    std::vector<int> deg(static_cast<std::size_t>(net.n), 0);
    for (const auto& e : net.edges) {
      ++deg[static_cast<std::size_t>(e.u)];
      ++deg[static_cast<std::size_t>(e.v)];
    }
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
      const auto& e = net.edges[i];
      const int score = deg[static_cast<std::size_t>(e.u)] + deg[static_cast<std::size_t>(e.v)];
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  static std::string make_key(const Net& net) {
    std::vector<std::uint64_t> words;
    words.push_back(static_cast<std::uint64_t>(net.n));
    for (const auto& e : net.edges) {
      words.push_back((static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint64_t>(e.v));
      words.push_back((e.fail.size() << 32) | e.work.size());
      words.insert(words.end(), e.fail.begin(), e.fail.end());
      words.insert(words.end(), e.work.begin(), e.work.end());
    }
    std::string key(words.size() * sizeof(std::uint64_t), '\0');
    std::memcpy(key.data(), words.data(), key.size());
    return key;
  }

  std::uint64_t max_calls_;
  std::uint64_t calls_ = 0;
  std::unordered_map<std::string, Poly> memo_;
};

}  // namespace

std::vector<std::uint64_t> connected_spanning_counts(const Multigraph& g, const ExactLimits& limits) {
  if (g.has_loops()) throw InputError("graph has loops");
  const int m = g.edge_count();
  if (m > 60) throw ResourceError("exact engine handles at most 60 edges, got " + std::to_string(m));
  Net net;
  net.n = g.vertex_count();
  for (const auto& e : g.edges()) net.edges.push_back({e.u, e.v, Poly{1}, Poly{0, 1}});
  Engine engine(limits.max_calls);
  Poly counts = engine.solve(std::move(net));
  counts.resize(static_cast<std::size_t>(m + 1), 0);
  return counts;
}

}  // namespace relgraph
