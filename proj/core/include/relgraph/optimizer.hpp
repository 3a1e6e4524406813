#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relgraph/bigint.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/structure.hpp"

namespace relgraph {

struct OptimizerLimits {
  std::uint64_t max_markings = 10'000'000;
};

enum class MarkingOrder { KJ, JK, Obstruction };

std::string to_string(MarkingOrder order);
MarkingOrder parse_marking_order(const std::string& text);

/// All lambda-subsets of chains whose gamma table is lexicographically
/// minimal, rows k then columns j. Sorted by mask.
std::vector<EdgeMask> minimize_kj(const Multigraph& s, int lambda, const OptimizerLimits& limits = {});

/// Same with the transposed order: column j first, then k.
std::vector<EdgeMask> minimize_jk(const Multigraph& s, int lambda, const OptimizerLimits& limits = {});

/// Obstruction counts minimized in sequence: mu_1 (r >= 4), mu_2 (r >= 5),
/// beta_3 + 4 beta_4, beta_4, then mu_3 when the structure has girth >= 6.
std::vector<EdgeMask> minimize_obstructions(const Multigraph& s, int lambda,
                                            const OptimizerLimits& limits = {});

/// The tuple minimized by minimize_obstructions for one marking.
std::vector<int> obstruction_key(const Multigraph& s, EdgeMask marks);

/// Markings that take the lambda lowest-ranked chains (by rho) and, among
/// those, minimize mu_1..mu_(g_free-3) lexicographically.
std::vector<EdgeMask> rank_then_separation(const Multigraph& s, int lambda, int g_free,
                                           const OptimizerLimits& limits = {});

/// CPLEX LP text choosing lambda chains while minimizing the number of
/// chosen pairs at edge distance d.
std::string export_lp(const Multigraph& s, int lambda, int d);

/// Minimum number of chosen pairs at distance d over all lambda-markings,
/// by exhaustive scan.
int min_pairs_at_distance(const Multigraph& s, int lambda, int d, const OptimizerLimits& limits = {});

enum class VerdictKind { Candidate, NoUniform };
enum class VerdictReason { None, NotTreeBalanced, NotTreeMaximal, NoJointMinimizer, DominatedByOtherStructure };

std::string to_string(VerdictKind kind);
std::string to_string(VerdictReason reason);

struct Candidate {
  std::size_t pool_index = 0;
  MarkedStructure marked;
};

struct Verdict {
  VerdictKind kind = VerdictKind::NoUniform;
  VerdictReason reason = VerdictReason::None;
  std::vector<Candidate> candidates;  // ties are all reported
  std::vector<std::pair<std::string, std::string>> evidence;
  std::vector<std::string> log;  // one line per pipeline step

  std::optional<MarkedStructure> marked() const {
    if (candidates.empty()) return std::nullopt;
    return candidates.front().marked;
  }
};

/// Runs the identification pipeline over a pool of cubic graphs on 2(r-1)
/// vertices. Tree-number maximality is checked within the pool only.
Verdict algorithm1(int r, int lambda, const std::vector<Multigraph>& pool,
                   const OptimizerLimits& limits = {});

}  // namespace relgraph
