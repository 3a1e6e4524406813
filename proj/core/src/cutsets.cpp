#include "relgraph/cutsets.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "relgraph/bigint.hpp"
#include "relgraph/error.hpp"
#include "subsets.hpp"

namespace relgraph {

namespace {

void require_mask_sized(const Multigraph& g) {
  if (g.edge_count() > kMaxMaskEdges) {
    throw ResourceError("cut enumeration supports at most 63 edges, got " +
                        std::to_string(g.edge_count()));
  }
  if (g.vertex_count() > 64) throw ResourceError("cut enumeration supports at most 64 vertices");
}

void reject_loops(const Multigraph& g) {
  if (g.has_loops()) throw InputError("graph has loops");
}

VertexMask bit(int v) { return VertexMask{1} << v; }

VertexMask all_vertices(int n) { return n == 64 ? ~VertexMask{0} : bit(n) - 1; }

std::vector<VertexMask> neighbour_masks(const Multigraph& g) {
  std::vector<VertexMask> nb(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    nb[static_cast<std::size_t>(e.u)] |= bit(e.v);
    nb[static_cast<std::size_t>(e.v)] |= bit(e.u);
  }
  return nb;
}

bool induced_connected(const std::vector<VertexMask>& nb, VertexMask set) {
  if (set == 0) return false;
  VertexMask seen = set & (~set + 1);
  VertexMask frontier = seen;
  while (frontier) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const VertexMask fresh = nb[static_cast<std::size_t>(v)] & set & ~seen;
    seen |= fresh;
    frontier |= fresh;
  }
  return seen == set;
}

int induced_edge_count(const Multigraph& g, VertexMask side) {
  int count = 0;
  for (const auto& e : g.edges()) {
    if ((side & bit(e.u)) && (side & bit(e.v))) ++count;
  }
  return count;
}

// Fills in skeleton tree-ness and (for regular graphs) triviality.
void annotate(const Multigraph& g, CutRecord& rec, std::optional<int> girth_value, bool regular) {
  const int vertices = std::popcount(rec.skeleton);
  rec.skeleton_is_tree = induced_edge_count(g, rec.skeleton) == vertices - 1;
  if (regular && rec.minimal) {
    const int limit = girth_value ? *girth_value - 1 : g.vertex_count();
    rec.trivial = rec.skeleton_is_tree && vertices <= limit;
  }
}

bool record_less(const CutRecord& a, const CutRecord& b) {
  return a.size != b.size ? a.size < b.size : a.edges < b.edges;
}

VertexMask pick_skeleton(std::span<const int> label, int components, int n) {
  std::array<int, 64> count{};
  std::array<VertexMask, 64> members{};
  for (int v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(label[static_cast<std::size_t>(v)]);
    ++count[c];
    members[c] |= bit(v);
  }
  // Component 0 holds vertex 0, so a strict comparison keeps it on ties.
  int best = 0;
  for (int c = 1; c < components; ++c) {
    if (count[static_cast<std::size_t>(c)] < count[static_cast<std::size_t>(best)]) best = c;
  }
  return members[static_cast<std::size_t>(best)];
}

}  // namespace

EdgeMask boundary(const Multigraph& g, VertexMask side) {
  require_mask_sized(g);
  const VertexMask full = all_vertices(g.vertex_count());
  if ((side & full) == 0 || (side & full) == full || (side & ~full) != 0) {
    throw InputError("boundary needs a nonempty proper vertex subset");
  }
  EdgeMask out = 0;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    if (((side >> e.u) & 1) != ((side >> e.v) & 1)) out |= EdgeMask{1} << id;
  }
  return out;
}

std::vector<CutRecord> enumerate_disconnecting_sets(const Multigraph& g, int max_k,
                                                    const EnumerationLimits& limits) {
  require_mask_sized(g);
  reject_loops(g);
  if (!is_connected(g)) throw InputError("graph is disconnected");
  const int m = g.edge_count();
  const int n = g.vertex_count();
  max_k = std::min(max_k, m);
  std::uint64_t work = 0;
  for (int k = 1; k <= max_k; ++k) {
    work += binomial_u64(m, k);
    if (work > limits.max_work) {
      throw ResourceError("subset budget exceeded: " + std::to_string(work) + " > " +
                          std::to_string(limits.max_work));
    }
  }

  const ConnectivityKernel kernel(g);
  const EdgeMask all = kernel.all_edges();
  const auto regular = regular_degree(g).has_value();
  const auto gir = girth(g);
  std::vector<CutRecord> out;
  std::array<int, 64> label{};
  for (int k = 1; k <= max_k; ++k) {
    detail::for_each_k_subset(m, k, [&](EdgeMask removed) {
      const EdgeMask working = all & ~removed;
      if (kernel.connected(working)) return true;
      CutRecord rec;
      rec.edges = removed;
      rec.size = k;
      const int comps = kernel.components(working, label);
      bool crossing = comps == 2;
      for (EdgeMask rest = removed; crossing && rest; rest &= rest - 1) {
        const auto& e = g.edge(std::countr_zero(rest));
        crossing = label[static_cast<std::size_t>(e.u)] != label[static_cast<std::size_t>(e.v)];
      }
      rec.minimal = crossing;
      rec.skeleton = pick_skeleton(label, comps, n);
      annotate(g, rec, gir, regular);
      out.push_back(rec);
      return true;
    });
  }
  return out;
}

std::vector<CutRecord> minimal_cuts(const Multigraph& g, int max_k, const EnumerationLimits& limits) {
  require_mask_sized(g);
  reject_loops(g);
  if (!is_connected(g)) throw InputError("graph is disconnected");
  const int n = g.vertex_count();
  if (max_k < 0) max_k = g.edge_count();
  const auto nb = neighbour_masks(g);
  const VertexMask full = all_vertices(n);
  const int max_side = n / 2;
  const auto regular = regular_degree(g).has_value();
  const auto gir = girth(g);

  std::vector<CutRecord> out;
  std::uint64_t work = 0;

  auto visit = [&](VertexMask side) {
    const int size = std::popcount(side);
    if (2 * size == n && !(side & 1)) return;  // the other half reports it
    const VertexMask rest = full & ~side;
    if (!induced_connected(nb, rest)) return;
    const EdgeMask cut = boundary(g, side);
    const int k = std::popcount(cut);
    if (k > max_k) return;
    CutRecord rec;
    rec.edges = cut;
    rec.size = k;
    rec.minimal = true;
    rec.skeleton = side;
    annotate(g, rec, gir, regular);
    out.push_back(rec);
  };

  // ESU: each connected vertex set is produced once, from its least vertex.
  auto extend = [&](auto& self, VertexMask sub, VertexMask ext, VertexMask closed, int root) -> void {
    if (++work > limits.max_work) throw ResourceError("skeleton enumeration budget exceeded");
    visit(sub);
    if (std::popcount(sub) == max_side) return;
    const VertexMask above = full & ~(bit(root + 1) - 1);
    while (ext) {
      const int w = std::countr_zero(ext);
      ext &= ext - 1;
      const VertexMask wn = nb[static_cast<std::size_t>(w)];
      const VertexMask fresh = wn & ~closed & above;
      self(self, sub | bit(w), ext | fresh, closed | wn, root);
    }
  };

  if (max_side >= 1) {
    for (int root = 0; root < n; ++root) {
      const VertexMask above = full & ~(bit(root + 1) - 1);
      const VertexMask rn = nb[static_cast<std::size_t>(root)];
      extend(extend, bit(root), rn & above, rn | bit(root), root);
    }
  }
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

bool classify_trivial(const Multigraph& g, const CutRecord& cut) {
  if (!regular_degree(g)) throw InputError("triviality is defined for regular graphs only");
  if (!cut.minimal) throw InputError("triviality is defined for minimal cuts only");
  const int vertices = std::popcount(cut.skeleton);
  const bool tree = induced_edge_count(g, cut.skeleton) == vertices - 1;
  const auto gir = girth(g);
  const int limit = gir ? *gir - 1 : g.vertex_count();
  return tree && vertices <= limit && boundary(g, cut.skeleton) == cut.edges;
}

TrivialityReport has_nontrivial_cutsets_up_to(const Multigraph& g, int bound) {
  const auto k = regular_degree(g);
  if (!k) throw InputError("graph is not regular");
  if (*k < 3) throw InputError("triviality needs degree at least 3");
  if (!is_connected(g)) throw InputError("graph is disconnected");
  if (bound <= 0) bound = girth(g).value_or(g.edge_count() + 1);

  TrivialityReport report;
  report.bound = bound;
  int smallest = -1;
  for (const auto& rec : minimal_cuts(g, -1)) {
    if (rec.trivial.value_or(false)) continue;
    if (smallest < 0) smallest = rec.size;
    if (rec.size != smallest) break;
    if (rec.size < bound) report.witnesses.push_back(rec);
  }
  report.g_free = smallest < 0 ? g.edge_count() + 1 : smallest / (*k - 2);
  return report;
}

int g_free(const Multigraph& g) { return has_nontrivial_cutsets_up_to(g).g_free; }

}  // namespace relgraph
