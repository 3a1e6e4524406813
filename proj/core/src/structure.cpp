#include "relgraph/structure.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "relgraph/error.hpp"
#include "relgraph/graph_io.hpp"
#include "subsets.hpp"

namespace relgraph {

namespace {

std::size_t tri_index(int k, int j) { return static_cast<std::size_t>(k * (k + 1) / 2 + j); }


}  // namespace

// ---------------------------------------------------------------------------
// distillation

Distillation distill(const Multigraph& g) {
  if (g.has_loops()) throw InputError("graph has loops");
  if (!is_connected(g)) throw InputError("graph is disconnected");
  const auto deg = g.degrees();
  const int min_deg = *std::min_element(deg.begin(), deg.end());
  const int max_deg = *std::max_element(deg.begin(), deg.end());
  if (min_deg < 2) throw InputError("distillation needs minimum degree 2");
  if (max_deg < 3) throw InputError("graph is a cycle; it has no structure graph");

  const int n = g.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  Distillation out;
  for (Vertex v = 0; v < n; ++v) {
    if (deg[static_cast<std::size_t>(v)] != 2) {
      label[static_cast<std::size_t>(v)] = static_cast<int>(out.structure_origin.size());
      out.structure_origin.push_back(v);
    }
  }
  out.structure = Multigraph(static_cast<int>(out.structure_origin.size()));
  const auto inc = g.incidence();
  std::vector<bool> used(static_cast<std::size_t>(g.edge_count()), false);

  // Walks from `from` through edge `via` until a structure vertex; appends
  // the visited vertices (excluding `from`) to path.
  auto walk = [&](Vertex from, EdgeId via, std::vector<Vertex>& path) {
    Vertex at = from;
    EdgeId edge = via;
    for (;;) {
      used[static_cast<std::size_t>(edge)] = true;
      at = g.edge(edge).other(at);
      path.push_back(at);
      if (label[static_cast<std::size_t>(at)] >= 0) return;
      const auto& two = inc[static_cast<std::size_t>(at)];
      edge = two[0] == edge ? two[1] : two[0];
    }
  };

  for (EdgeId start = 0; start < g.edge_count(); ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    const auto& e = g.edge(start);
    std::vector<Vertex> back{e.v};
    walk(e.v, start, back);  // back = e.v, ..., end reached through e.u
    std::vector<Vertex> path(back.rbegin(), back.rend());
    if (label[static_cast<std::size_t>(e.v)] < 0) {
      const auto& two = inc[static_cast<std::size_t>(e.v)];
      const EdgeId next = two[0] == start ? two[1] : two[0];
      walk(e.v, next, path);
    }
    int a = label[static_cast<std::size_t>(path.front())];
    int b = label[static_cast<std::size_t>(path.back())];
    if (a > b) {
      std::reverse(path.begin(), path.end());
      std::swap(a, b);
    }
    out.structure.add_edge(a, b);
    out.chain_lengths.push_back(static_cast<int>(path.size()) - 1);
    out.origin_paths.push_back(std::move(path));
  }
  return out;
}

Multigraph subdivide(const Multigraph& s, const std::vector<int>& lengths) {
  if (static_cast<int>(lengths.size()) != s.edge_count()) throw InputError("one length per edge is required");
  int n = s.vertex_count();
  for (int len : lengths) {
    if (len < 1) throw InputError("chain lengths must be at least 1");
    n += len - 1;
  }
  Multigraph out(n);
  int next = s.vertex_count();
  for (EdgeId id = 0; id < s.edge_count(); ++id) {
    const auto& e = s.edge(id);
    Vertex at = e.u;
    for (int step = 1; step < lengths[static_cast<std::size_t>(id)]; ++step) {
      out.add_edge(at, next);
      at = next++;
    }
    out.add_edge(at, e.v);
  }
  return out;
}

std::pair<int, int> c_lambda(int n, int r) {
  if (r < 2) throw InputError("c and lambda need redundancy at least 2");
  const int base = n - 2 * (r - 1);
  if (base < 0) throw InputError("n = " + std::to_string(n) + " is below 2(r-1) for r = " + std::to_string(r));
  const int chains = 3 * (r - 1);
  return {base / chains + 1, base % chains};
}

std::vector<int> marked_lengths(const Multigraph& s, EdgeMask long_chains, int c) {
  std::vector<int> out(static_cast<std::size_t>(s.edge_count()), c);
  for (int e = 0; e < s.edge_count(); ++e) {
    if (long_chains & edge_bit(e)) ++out[static_cast<std::size_t>(e)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// marked structures

int MarkedStructure::lambda() const { return std::popcount(long_chains); }

void validate(const MarkedStructure& ms) {
  const auto& s = ms.structure;
  if (s.has_loops()) throw InputError("structure has loops");
  if (regular_degree(s) != 3) throw InputError("structure is not cubic");
  if (!is_connected(s)) throw InputError("structure is disconnected");
  if (s.edge_count() > kMaxMaskEdges) throw ResourceError("structure has too many edges for chain masks");
  if (ms.long_chains >> s.edge_count()) throw InputError("long-chain id out of range");
  if (ms.lambda() >= s.edge_count()) throw InputError("lambda must be below the number of chains");
}

std::string serialize(const MarkedStructure& ms) {
  const auto order = ms.structure.canonical_order();
  std::string out = emit_sparse6(ms.structure);
  std::string ids;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (ms.long_chains & edge_bit(order[i])) {
      if (!ids.empty()) ids += ',';
      ids += std::to_string(i);
    }
  }
  if (!ids.empty()) out += ' ' + ids;
  return out;
}

MarkedStructure parse_marked_structure(const std::string& line) {
  std::istringstream in(line);
  std::string encoding, ids;
  in >> encoding >> ids;
  if (encoding.empty()) throw InputError("empty marked-structure line");
  MarkedStructure ms;
  ms.structure = parse_graph_line(encoding);
  std::stringstream list(ids);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.empty()) continue;
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(item, &used);
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad long-chain id '" + item + "'");
    }
    if (id < 0 || id >= ms.structure.edge_count()) throw InputError("long-chain id out of range: " + item);
    ms.long_chains |= edge_bit(id);
  }
  return ms;
}

// ---------------------------------------------------------------------------
// polynomials

std::vector<BigInt> u2_poly(const std::vector<int>& lengths, int m) {
  // prod_e (q^l + l p q^(l-1)) has Bernstein coefficients e_k(l_1, ..., l_s).
  std::vector<BigInt> elem{1};
  for (int len : lengths) {
    elem.push_back(0);
    for (std::size_t k = elem.size() - 1; k > 0; --k) elem[k] += elem[k - 1] * len;
  }
  std::vector<BigInt> out(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) {
    out[static_cast<std::size_t>(k)] = binomial(m, k);
    if (static_cast<std::size_t>(k) < elem.size()) out[static_cast<std::size_t>(k)] -= elem[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<BigInt> GammaTable::flatten_kj() const {
  std::vector<BigInt> out;
  for (int k = 0; k <= max_k; ++k) {
    for (int j = 0; j <= k; ++j) out.push_back(gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<BigInt> GammaTable::flatten_jk() const {
  std::vector<BigInt> out;
  for (int j = 0; j <= max_k; ++j) {
    for (int k = j; k <= max_k; ++k) out.push_back(gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// chain cut index

ChainCutIndex ChainCutIndex::full(const Multigraph& s, std::uint64_t max_work) {
  if (s.edge_count() > kMaxMaskEdges) throw ResourceError("too many chains for the cut index");
  if (!is_connected(s)) throw InputError("structure graph is disconnected");
  const ConnectivityKernel kernel(s);
  ChainCutIndex out;
  out.m_ = s.edge_count();
  out.max_k_ = out.m_;
  out.complete_ = true;
  out.by_size_.resize(static_cast<std::size_t>(out.m_ + 1));
  const int reach = std::min(out.m_, s.redundancy());
  std::uint64_t work = 0;
  for (int k = 0; k <= reach; ++k) {
    work += binomial_u64(out.m_, k);
    if (work > max_work) throw ResourceError("chain subset budget exceeded");
  }
  const EdgeMask all = kernel.all_edges();
  for (int k = 0; k <= reach; ++k) {
    detail::for_each_k_subset(out.m_, k, [&](EdgeMask x) {
      if (kernel.connected(all & ~x)) out.by_size_[static_cast<std::size_t>(k)].push_back(x);
      return true;
    });
  }
  return out;
}

ChainCutIndex ChainCutIndex::truncated(const Multigraph& s, int max_k, std::uint64_t max_work) {
  if (s.edge_count() > kMaxMaskEdges) throw ResourceError("too many chains for the cut index");
  if (!is_connected(s)) throw InputError("structure graph is disconnected");
  const ConnectivityKernel kernel(s);
  ChainCutIndex out;
  out.m_ = s.edge_count();
  out.max_k_ = std::clamp(max_k, 0, out.m_);
  out.complete_ = out.max_k_ == out.m_;
  std::uint64_t work = 0;
  for (int k = 0; k <= out.max_k_; ++k) {
    work += binomial_u64(out.m_, k);
    if (work > max_work) throw ResourceError("chain subset budget exceeded");
  }
  if (out.complete_) return full(s, max_work);
  out.by_size_.resize(static_cast<std::size_t>(out.max_k_ + 1));
  const EdgeMask all = kernel.all_edges();
  for (int k = 0; k <= out.max_k_; ++k) {
    detail::for_each_k_subset(out.m_, k, [&](EdgeMask x) {
      if (!kernel.connected(all & ~x)) out.by_size_[static_cast<std::size_t>(k)].push_back(x);
      return true;
    });
  }
  return out;
}

std::vector<std::uint64_t> ChainCutIndex::gamma_counts(EdgeMask marks) const {
  const int lambda = std::popcount(marks);
  std::vector<std::uint64_t> out(tri_index(max_k_ + 1, 0), 0);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(lambda + 1));
  for (int k = 0; k <= max_k_; ++k) {
    std::fill(hist.begin(), hist.end(), 0);
    for (EdgeMask x : by_size_[static_cast<std::size_t>(k)]) ++hist[static_cast<std::size_t>(std::popcount(x & marks))];
    if (complete_) {
      // hist holds non-disconnecting sets; subtract from all k-sets.
      for (int l = 0; l <= std::min(lambda, k); ++l) {
        hist[static_cast<std::size_t>(l)] =
            binomial_u64(lambda, l) * binomial_u64(m_ - lambda, k - l) - hist[static_cast<std::size_t>(l)];
      }
    }
    for (int j = 0; j <= k; ++j) {
      std::uint64_t sum = 0;
      for (int l = j; l <= std::min(lambda, k); ++l) sum += hist[static_cast<std::size_t>(l)] * binomial_u64(l, j);
      out[tri_index(k, j)] = sum;
    }
  }
  return out;
}

GammaTable ChainCutIndex::gamma(EdgeMask marks) const {
  const auto counts = gamma_counts(marks);
  GammaTable gt;
  gt.chains = m_;
  gt.max_k = max_k_;
  gt.gamma.resize(static_cast<std::size_t>(max_k_ + 1));
  for (int k = 0; k <= max_k_; ++k) {
    for (int j = 0; j <= k; ++j) gt.gamma[static_cast<std::size_t>(k)].push_back(counts[tri_index(k, j)]);
  }
  return gt;
}

std::vector<std::uint64_t> ChainCutIndex::containing(EdgeMask required) const {
  const int t = std::popcount(required);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(max_k_ + 1), 0);
  for (int k = 0; k <= max_k_; ++k) {
    std::uint64_t count = 0;
    for (EdgeMask x : by_size_[static_cast<std::size_t>(k)]) {
      if ((x & required) == required) ++count;
    }
    out[static_cast<std::size_t>(k)] = complete_ ? binomial_u64(m_ - t, k - t) - count : count;
  }
  return out;
}

GammaTable gamma_table(const MarkedStructure& ms) {
  validate(ms);
  return ChainCutIndex::full(ms.structure).gamma(ms.long_chains);
}

std::vector<BigInt> b1_coeffs(const GammaTable& gt, int c) {
  if (c < 1) throw InputError("c must be at least 1");
  std::vector<BigInt> out(static_cast<std::size_t>(gt.max_k + 1), 0);
  for (int k = 0; k <= gt.max_k; ++k) {
    BigInt sum = 0;
    for (int j = 0; j <= k; ++j) {
      sum += gt.gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * boost::multiprecision::pow(BigInt(c), static_cast<unsigned>(k - j));
    }
    out[static_cast<std::size_t>(k)] = sum;
  }
  return out;
}

std::vector<BigInt> u1_poly(const GammaTable& gt, int c, int m) {
  if (gt.max_k < gt.chains) throw InputError("U1 needs a complete gamma table");
  if (m < gt.chains) throw InputError("m is smaller than the number of chains");
  auto b = b1_coeffs(gt, c);
  b.resize(static_cast<std::size_t>(m + 1), 0);
  return b;
}

Decomposition decompose(const Multigraph& g) {
  Decomposition out;
  out.distillation = distill(g);
  const auto& lengths = out.distillation.chain_lengths;
  const int lo = *std::min_element(lengths.begin(), lengths.end());
  const int hi = *std::max_element(lengths.begin(), lengths.end());
  if (hi - lo > 1) throw InputError("chain lengths differ by more than one");
  out.c = lo;
  for (std::size_t e = 0; e < lengths.size(); ++e) {
    if (lengths[e] == lo + 1) out.long_chains |= edge_bit(static_cast<int>(e));
  }
  const int m = g.edge_count();
  const auto table = ChainCutIndex::full(out.distillation.structure).gamma(out.long_chains);
  out.u1 = u1_poly(table, out.c, m);
  out.u2 = u2_poly(lengths, m);
  out.total.resize(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) {
    out.total[static_cast<std::size_t>(k)] = out.u1[static_cast<std::size_t>(k)] + out.u2[static_cast<std::size_t>(k)];
  }
  out.reference = (m <= kBruteForceMaxEdges ? unrel_bruteforce(g) : unrel_exact(g)).bernstein;
  out.holds = out.total == out.reference;
  return out;
}

bool decompose_check(const Multigraph& g) { return decompose(g).holds; }

// ---------------------------------------------------------------------------
// obstruction parameters

std::vector<int> separation_counts(const Multigraph& s, EdgeMask marks, int max_d,
                                   const std::vector<int>& distances) {
  const int m = s.edge_count();
  std::vector<int> out(static_cast<std::size_t>(std::max(max_d, 0)), 0);
  for (EdgeMask a = marks; a; a &= a - 1) {
    const int e = std::countr_zero(a);
    for (EdgeMask b = a & (a - 1); b; b &= b - 1) {
      const int f = std::countr_zero(b);
      const int d = distances[static_cast<std::size_t>(e * m + f)];
      if (d >= 1 && d <= max_d) ++out[static_cast<std::size_t>(d - 1)];
    }
  }
  return out;
}

ObstructionProfile obstruction_profile(const MarkedStructure& ms, int g_free) {
  validate(ms);
  const auto& s = ms.structure;
  const int m = s.edge_count();
  const auto inc = s.incidence();
  auto is_long = [&](EdgeId e) { return ((ms.long_chains >> e) & 1) != 0; };

  ObstructionProfile out;
  for (const auto& around : inc) {
    int count = 0;
    for (EdgeId e : around) count += is_long(e);
    ++out.alpha[static_cast<std::size_t>(count)];
  }
  for (EdgeId e = 0; e < m; ++e) {
    int count = 0;
    for (Vertex end : {s.edge(e).u, s.edge(e).v}) {
      bool skipped = false;
      for (EdgeId f : inc[static_cast<std::size_t>(end)]) {
        if (f == e && !skipped) {
          skipped = true;
          continue;
        }
        count += is_long(f);
      }
    }
    ++out.beta[static_cast<std::size_t>(std::min(count, 4))];
  }

  const auto distances = edge_distance_matrix(s);
  const int max_d = *std::max_element(distances.begin(), distances.end());
  out.mu_all = separation_counts(s, ms.long_chains, max_d, distances);
  out.mu.assign(static_cast<std::size_t>(std::max(g_free - 3, 0)), 0);
  for (std::size_t d = 0; d < out.mu.size() && d < out.mu_all.size(); ++d) out.mu[d] = out.mu_all[d];

  const auto index = ChainCutIndex::full(s);
  for (EdgeId e = 0; e < m; ++e) {
    const auto counts = index.containing(edge_bit(e));
    out.rho.emplace_back(counts.begin() + std::min<std::ptrdiff_t>(3, static_cast<std::ptrdiff_t>(counts.size())), counts.end());
  }
  auto sorted = out.rho;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& r : out.rho) {
    out.rank.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin()));
  }
  return out;
}

}  // namespace relgraph
