#include "relgraph/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "relgraph/cutsets.hpp"
#include "relgraph/error.hpp"
#include "relgraph/parallel.hpp"
#include "relgraph/reliability.hpp"
#include "relgraph/spanning.hpp"
#include "subsets.hpp"

namespace relgraph {

namespace {


std::string mask_list(EdgeMask mask) {
  std::string out;
  for (; mask; mask &= mask - 1) {
    if (!out.empty()) out += ',';
    out += std::to_string(std::countr_zero(mask));
  }
  return out.empty() ? "-" : out;
}

void check_lambda(const Multigraph& s, int lambda) {
  if (lambda < 0 || lambda >= s.edge_count()) {
    throw InputError("lambda must lie in [0, " + std::to_string(s.edge_count()) + ")");
  }
  if (s.edge_count() > kMaxMaskEdges) throw ResourceError("structure has too many chains");
}

std::vector<EdgeMask> all_markings(int m, int lambda, const OptimizerLimits& limits) {
  const auto count = binomial_u64(m, lambda);
  if (count > limits.max_markings) {
    throw ResourceError("C(" + std::to_string(m) + ", " + std::to_string(lambda) + ") = " +
                        std::to_string(count) + " markings exceeds the cap of " +
                        std::to_string(limits.max_markings));
  }
  std::vector<EdgeMask> out;
  out.reserve(count);
  detail::for_each_k_subset(m, lambda, [&](EdgeMask x) {
    out.push_back(x);
    return true;
  });
  return out;
}

// Keeps every marking whose key is lexicographically minimal. Chunks are
// reduced in order, so the output is independent of scheduling.
template <class Key, class KeyFn>
std::vector<EdgeMask> lex_minimizers(const std::vector<EdgeMask>& markings, KeyFn key_of) {
  if (markings.empty()) return {};
  const std::size_t chunks = std::min<std::size_t>(markings.size(), worker_count() * 4);
  const std::size_t per = (markings.size() + chunks - 1) / chunks;
  std::vector<Key> best(chunks);
  std::vector<std::vector<EdgeMask>> winners(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t start = c * per;
    const std::size_t stop = std::min(markings.size(), start + per);
    for (std::size_t i = start; i < stop; ++i) {
      Key key = key_of(markings[i]);
      if (winners[c].empty() || key < best[c]) {
        best[c] = std::move(key);
        winners[c].assign(1, markings[i]);
      } else if (key == best[c]) {
        winners[c].push_back(markings[i]);
      }
    }
  });
  std::size_t lead = chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (winners[c].empty()) continue;
    if (lead == chunks || best[c] < best[lead]) lead = c;
  }
  std::vector<EdgeMask> out;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (!winners[c].empty() && best[c] == best[lead]) out.insert(out.end(), winners[c].begin(), winners[c].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> transpose_key(const std::vector<std::uint64_t>& row_major, int max_k) {
  std::vector<std::uint64_t> out;
  out.reserve(row_major.size());
  for (int j = 0; j <= max_k; ++j) {
    for (int k = j; k <= max_k; ++k) out.push_back(row_major[static_cast<std::size_t>(k * (k + 1) / 2 + j)]);
  }
  return out;
}

struct ObstructionContext {
  int m = 0;
  int r = 0;
  int girth = 0;
  std::vector<std::vector<EdgeId>> inc;
  std::vector<std::array<EdgeId, 4>> neighbours;  // the four chains beside each chain
  std::vector<int> distances;

  explicit ObstructionContext(const Multigraph& s)
      : m(s.edge_count()), r(s.redundancy()), girth(relgraph::girth(s).value_or(0)), inc(s.incidence()),
        distances(edge_distance_matrix(s)) {
    if (regular_degree(s) != 3) throw InputError("structure is not cubic");
    for (EdgeId e = 0; e < m; ++e) {
      std::array<EdgeId, 4> nb{};
      std::size_t at = 0;
      for (Vertex end : {s.edge(e).u, s.edge(e).v}) {
        bool skipped = false;
        for (EdgeId f : inc[static_cast<std::size_t>(end)]) {
          if (f == e && !skipped) {
            skipped = true;
            continue;
          }
          if (at < 4) nb[at++] = f;
        }
      }
      neighbours.push_back(nb);
    }
  }

  std::vector<int> key(EdgeMask marks) const {
    const auto mu = separation_counts_fast(marks, 3);
    int beta3 = 0, beta4 = 0;
    for (EdgeId e = 0; e < m; ++e) {
      int count = 0;
      for (EdgeId f : neighbours[static_cast<std::size_t>(e)]) count += static_cast<int>((marks >> f) & 1);
      if (count == 3) ++beta3;
      if (count == 4) ++beta4;
    }
    std::vector<int> out;
    if (r >= 4) out.push_back(mu[0]);
    if (r >= 5) out.push_back(mu[1]);
    out.push_back(beta3 + 4 * beta4);
    out.push_back(beta4);
    if (girth >= 6) out.push_back(mu[2]);
    return out;
  }

  std::array<int, 3> separation_counts_fast(EdgeMask marks, int max_d) const {
    std::array<int, 3> mu{};
    for (EdgeMask a = marks; a; a &= a - 1) {
      const int e = std::countr_zero(a);
      for (EdgeMask b = a & (a - 1); b; b &= b - 1) {
        const int d = distances[static_cast<std::size_t>(e * m + std::countr_zero(b))];
        if (d >= 1 && d <= max_d) ++mu[static_cast<std::size_t>(d - 1)];
      }
    }
    return mu;
  }
};

}  // namespace

std::string to_string(MarkingOrder order) {
  switch (order) {
    case MarkingOrder::KJ: return "kj";
    case MarkingOrder::JK: return "jk";
    case MarkingOrder::Obstruction: return "obstruction";
  }
  return "?";
}

MarkingOrder parse_marking_order(const std::string& text) {
  if (text == "kj") return MarkingOrder::KJ;
  if (text == "jk") return MarkingOrder::JK;
  if (text == "obstruction") return MarkingOrder::Obstruction;
  throw InputError("unknown order '" + text + "' (expected kj, jk or obstruction)");
}

std::vector<EdgeMask> minimize_kj(const Multigraph& s, int lambda, const OptimizerLimits& limits) {
  check_lambda(s, lambda);
  const auto markings = all_markings(s.edge_count(), lambda, limits);
  const auto index = ChainCutIndex::full(s);
  return lex_minimizers<std::vector<std::uint64_t>>(markings, [&](EdgeMask x) { return index.gamma_counts(x); });
}

std::vector<EdgeMask> minimize_jk(const Multigraph& s, int lambda, const OptimizerLimits& limits) {
  check_lambda(s, lambda);
  const auto markings = all_markings(s.edge_count(), lambda, limits);
  const auto index = ChainCutIndex::full(s);
  return lex_minimizers<std::vector<std::uint64_t>>(
      markings, [&](EdgeMask x) { return transpose_key(index.gamma_counts(x), index.max_k()); });
}

std::vector<int> obstruction_key(const Multigraph& s, EdgeMask marks) {
  return ObstructionContext(s).key(marks);
}

std::vector<EdgeMask> minimize_obstructions(const Multigraph& s, int lambda, const OptimizerLimits& limits) {
  check_lambda(s, lambda);
  const ObstructionContext ctx(s);
  const auto markings = all_markings(s.edge_count(), lambda, limits);
  return lex_minimizers<std::vector<int>>(markings, [&](EdgeMask x) { return ctx.key(x); });
}

std::vector<EdgeMask> rank_then_separation(const Multigraph& s, int lambda, int g_free,
                                           const OptimizerLimits& limits) {
  check_lambda(s, lambda);
  const auto profile = obstruction_profile(MarkedStructure{s, 0}, g_free);
  const int m = s.edge_count();
  std::vector<int> by_rank(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e) by_rank[static_cast<std::size_t>(e)] = e;
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
    return profile.rank[static_cast<std::size_t>(a)] < profile.rank[static_cast<std::size_t>(b)];
  });
  std::vector<EdgeMask> markings;
  if (lambda == 0) {
    markings.push_back(0);
  } else {
    const int threshold = profile.rank[static_cast<std::size_t>(by_rank[static_cast<std::size_t>(lambda - 1)])];
    EdgeMask fixed = 0;
    std::vector<int> tied;
    for (int e = 0; e < m; ++e) {
      const int rk = profile.rank[static_cast<std::size_t>(e)];
      if (rk < threshold) fixed |= edge_bit(e);
      if (rk == threshold) tied.push_back(e);
    }
    const int need = lambda - std::popcount(fixed);
    const auto choices = all_markings(static_cast<int>(tied.size()), need, limits);
    for (EdgeMask pick : choices) {
      EdgeMask marks = fixed;
      for (; pick; pick &= pick - 1) marks |= edge_bit(tied[static_cast<std::size_t>(std::countr_zero(pick))]);
      markings.push_back(marks);
    }
    std::sort(markings.begin(), markings.end());
  }
  const auto distances = edge_distance_matrix(s);
  const int max_d = std::max(g_free - 3, 0);
  return lex_minimizers<std::vector<int>>(
      markings, [&](EdgeMask x) { return separation_counts(s, x, max_d, distances); });
}

std::string export_lp(const Multigraph& s, int lambda, int d) {
  if (lambda < 0 || lambda > s.edge_count()) throw InputError("lambda out of range");
  const int m = s.edge_count();
  const auto distances = edge_distance_matrix(s);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (distances[static_cast<std::size_t>(i * m + j)] == d) pairs.emplace_back(i, j);
    }
  }
  auto y = [](const std::pair<int, int>& p) {
    return "y_" + std::to_string(p.first) + "_" + std::to_string(p.second);
  };
  std::ostringstream out;
  out << "\\ choose " << lambda << " of " << m << " chains, minimize pairs at distance " << d << "\n";
  out << "Minimize\n obj:";
  if (pairs.empty()) {
    out << " 0 x_0";
  } else {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out << (i ? " +" : "") << ' ' << y(pairs[i]);
      if (i % 8 == 7 && i + 1 < pairs.size()) out << "\n     ";
    }
  }
  out << "\nSubject To\n card:";
  for (int i = 0; i < m; ++i) {
    out << (i ? " +" : "") << " x_" << i;
    if (i % 10 == 9 && i + 1 < m) out << "\n      ";
  }
  out << " = " << lambda << "\n";
  for (const auto& p : pairs) {
    out << " link_" << p.first << '_' << p.second << ": " << y(p) << " - x_" << p.first << " - x_" << p.second
        << " >= -1\n";
  }
  out << "Binary\n";
  for (int i = 0; i < m; ++i) out << " x_" << i << "\n";
  for (const auto& p : pairs) out << ' ' << y(p) << "\n";
  out << "End\n";
  return out.str();
}

int min_pairs_at_distance(const Multigraph& s, int lambda, int d, const OptimizerLimits& limits) {
  const auto distances = edge_distance_matrix(s);
  const auto markings = all_markings(s.edge_count(), lambda, limits);
  int best = -1;
  for (EdgeMask x : markings) {
    const auto mu = separation_counts(s, x, d, distances);
    const int value = d >= 1 ? mu[static_cast<std::size_t>(d - 1)] : 0;
    if (best < 0 || value < best) best = value;
  }
  return best;
}

std::string to_string(VerdictKind kind) { return kind == VerdictKind::Candidate ? "Candidate" : "NoUniform"; }

std::string to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::None: return "None";
    case VerdictReason::NotTreeBalanced: return "NotTreeBalanced";
    case VerdictReason::NotTreeMaximal: return "NotTreeMaximal";
    case VerdictReason::NoJointMinimizer: return "NoJointMinimizer";
    case VerdictReason::DominatedByOtherStructure: return "DominatedByOtherStructure";
  }
  return "?";
}

Verdict algorithm1(int r, int lambda, const std::vector<Multigraph>& pool, const OptimizerLimits& limits) {
  if (r < 2) throw InputError("r must be at least 2");
  if (pool.empty()) throw InputError("pool is empty");
  const int n_s = 2 * (r - 1);
  const int chains = 3 * (r - 1);
  if (lambda < 0 || lambda >= chains) throw InputError("lambda must lie in [0, 3(r-1))");
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& g = pool[i];
    if (g.vertex_count() != n_s || regular_degree(g) != 3 || !is_connected(g) || g.has_loops()) {
      throw InputError("pool entry " + std::to_string(i) + " is not a connected cubic graph on " +
                       std::to_string(n_s) + " vertices");
    }
  }

  Verdict verdict;
  auto note = [&](const std::string& key, const std::string& value) { verdict.evidence.emplace_back(key, value); };

  // 1. near-zero filtration over the pool
  std::vector<UnrelPoly> polys(pool.size());
  parallel_for(pool.size(), [&](std::size_t i) { polys[i] = unrel_exact(pool[i]); });
  const auto filtration = class_filtration(polys, ClassOrder::NearZero);
  const auto winners = filtration.final_survivors();
  verdict.log.push_back("step 1: " + std::to_string(winners.size()) + " of " + std::to_string(pool.size()) +
                        " pool graphs survive the near-zero filtration");

  // 2. tree balance and tree-number maximality (within the pool)
  std::vector<BigInt> trees(pool.size());
  parallel_for(pool.size(), [&](std::size_t i) { trees[i] = tree_number(pool[i]); });
  const auto max_it = std::max_element(trees.begin(), trees.end());
  const auto max_index = static_cast<std::size_t>(max_it - trees.begin());
  note("tree_maximality_scope", "pool");

  std::vector<std::size_t> passing;
  for (auto w : winners) {
    const auto balance = is_tree_balanced(pool[w]);
    if (!balance.balanced) {
      if (verdict.reason == VerdictReason::None) {
        verdict.reason = VerdictReason::NotTreeBalanced;
        note("structure", std::to_string(w));
        note("max_edge", std::to_string(balance.max_edge));
        note("min_edge", std::to_string(balance.min_edge));
        note("max_tree_number_minus_edge", balance.max_value.str());
        note("min_tree_number_minus_edge", balance.min_value.str());
      }
      continue;
    }
    if (trees[w] < *max_it) {
      if (verdict.reason == VerdictReason::None) {
        verdict.reason = VerdictReason::NotTreeMaximal;
        note("structure", std::to_string(w));
        note("tree_number", trees[w].str());
        note("pool_maximizer", std::to_string(max_index));
        note("pool_max_tree_number", max_it->str());
      }
      continue;
    }
    passing.push_back(w);
  }
  verdict.log.push_back("step 2: " + std::to_string(passing.size()) +
                        " survivors are tree-balanced and tree-maximal within the pool");
  if (passing.empty()) return verdict;
  verdict.reason = VerdictReason::None;
  verdict.evidence.clear();
  note("tree_maximality_scope", "pool");

  // 3-5. rank/separation minimizers against obstruction minimizers
  struct Joint {
    std::size_t index;
    std::vector<EdgeMask> markings;
  };
  std::vector<Joint> joint;
  for (auto w : passing) {
    const int gf = has_nontrivial_cutsets_up_to(pool[w]).g_free;
    const auto by_rank = rank_then_separation(pool[w], lambda, gf, limits);
    const auto by_obstruction = minimize_obstructions(pool[w], lambda, limits);
    std::vector<EdgeMask> both;
    std::set_intersection(by_rank.begin(), by_rank.end(), by_obstruction.begin(), by_obstruction.end(),
                          std::back_inserter(both));
    verdict.log.push_back("steps 3-5: structure " + std::to_string(w) + " (g_free " + std::to_string(gf) + "): " +
                          std::to_string(by_rank.size()) + " rank/separation minimizers, " +
                          std::to_string(by_obstruction.size()) + " obstruction minimizers, " +
                          std::to_string(both.size()) + " joint");
    if (both.empty()) {
      if (verdict.reason == VerdictReason::None) {
        verdict.reason = VerdictReason::NoJointMinimizer;
        note("structure", std::to_string(w));
        note("rank_separation_example", mask_list(by_rank.front()));
        note("obstruction_example", mask_list(by_obstruction.front()));
      }
      continue;
    }
    joint.push_back({w, both});
  }
  if (joint.empty()) return verdict;
  verdict.reason = VerdictReason::None;
  verdict.evidence.clear();
  note("tree_maximality_scope", "pool");

  // Best joint markings by the (k, j) gamma order.
  std::vector<std::uint64_t> best_key;
  for (const auto& jm : joint) {
    const auto index = ChainCutIndex::full(pool[jm.index]);
    for (EdgeMask x : jm.markings) {
      auto key = index.gamma_counts(x);
      if (verdict.candidates.empty() || key < best_key) {
        best_key = std::move(key);
        verdict.candidates.assign(1, Candidate{jm.index, MarkedStructure{pool[jm.index], x}});
      } else if (key == best_key) {
        verdict.candidates.push_back(Candidate{jm.index, MarkedStructure{pool[jm.index], x}});
      }
    }
  }

  // 6. can another structure's best marking beat the candidate? Rows before
  // the first differing b_k decide it, since that row starts with a larger
  // gamma[k][0] for the other structure.
  const auto& winner_b = polys[verdict.candidates.front().pool_index].bernstein;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const bool own = std::any_of(joint.begin(), joint.end(), [i](const Joint& jm) { return jm.index == i; });
    if (!own) others.push_back(i);
  }
  struct Challenge {
    bool dominates = false;
    EdgeMask marks = 0;
    std::size_t position = 0;
  };
  std::vector<Challenge> challenges(others.size());
  parallel_for(others.size(), [&](std::size_t t) {
    const std::size_t i = others[t];
    const auto& b = polys[i].bernstein;
    int first_diff = chains + 1;
    for (int k = 0; k <= chains; ++k) {
      if (b[static_cast<std::size_t>(k)] != winner_b[static_cast<std::size_t>(k)]) {
        first_diff = k;
        break;
      }
    }
    const int rows = first_diff - 1;
    if (rows < 0) return;
    const auto index = ChainCutIndex::truncated(pool[i], rows);
    const std::size_t length = static_cast<std::size_t>((rows + 1) * (rows + 2) / 2);
    const std::vector<std::uint64_t> target(best_key.begin(), best_key.begin() + static_cast<std::ptrdiff_t>(length));
    std::vector<std::uint64_t> best;
    EdgeMask best_marks = 0;
    detail::for_each_k_subset(chains, lambda, [&](EdgeMask x) {
      auto key = index.gamma_counts(x);
      if (best.empty() || key < best) {
        best = std::move(key);
        best_marks = x;
      }
      return true;
    });
    if (best < target) {
      auto& c = challenges[t];
      c.dominates = true;
      c.marks = best_marks;
      c.position = static_cast<std::size_t>(std::mismatch(best.begin(), best.end(), target.begin()).first - best.begin());
    }
  });
  verdict.log.push_back("step 6: compared against " + std::to_string(others.size()) + " other pool structures");
  for (std::size_t t = 0; t < others.size(); ++t) {
    if (!challenges[t].dominates) continue;
    verdict.reason = VerdictReason::DominatedByOtherStructure;
    int k = 0;
    while ((k + 1) * (k + 2) / 2 <= static_cast<int>(challenges[t].position)) ++k;
    const int j = static_cast<int>(challenges[t].position) - k * (k + 1) / 2;
    note("dominating_structure", std::to_string(others[t]));
    note("dominating_marking", serialize(MarkedStructure{pool[others[t]], challenges[t].marks}));
    note("first_smaller_gamma", "k=" + std::to_string(k) + ",j=" + std::to_string(j));
    note("candidate_marking", serialize(verdict.candidates.front().marked));
    return verdict;
  }
  verdict.kind = VerdictKind::Candidate;
  return verdict;
}

}  // namespace relgraph
