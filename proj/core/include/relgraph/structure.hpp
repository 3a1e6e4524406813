#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relgraph/bigint.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/reliability.hpp"

namespace relgraph {

struct Distillation {
  Multigraph structure;                          // no vertex of degree 2
  std::vector<int> chain_lengths;                // per structure edge
  std::vector<std::vector<Vertex>> origin_paths; // per chain, from its u end to its v end
  std::vector<Vertex> structure_origin;          // structure vertex -> original vertex
};

/// Suppresses degree-2 vertices. Chains are ordered by their smallest
/// original edge id, structure vertices by original id.
Distillation distill(const Multigraph& g);

/// Replaces edge e by a path of lengths[e] edges. New vertices are appended
/// chain by chain, so distill(subdivide(s, l)) gives back (s, l).
Multigraph subdivide(const Multigraph& s, const std::vector<int>& lengths);

/// Unique c >= 1, 0 <= lambda < 3(r-1) with n - 2(r-1) = (c-1)*3(r-1) + lambda.
std::pair<int, int> c_lambda(int n, int r);

/// Chain lengths for a marked structure at base length c.
std::vector<int> marked_lengths(const Multigraph& s, EdgeMask long_chains, int c);

struct MarkedStructure {
  Multigraph structure;  // cubic, connected
  EdgeMask long_chains = 0;

  int lambda() const;
  int r() const { return structure.redundancy(); }
};

/// Checks cubic, connected, lambda < 3(r-1) and mark ids in range.
void validate(const MarkedStructure& ms);

/// "<sparse6> <id,id,...>" with ids in the canonical edge order of the
/// sparse6 line; an unmarked structure is the sparse6 line alone.
std::string serialize(const MarkedStructure& ms);
MarkedStructure parse_marked_structure(const std::string& line);

/// Bernstein coefficients over m edges of 1 - prod_e (q^l + l p q^(l-1)).
std::vector<BigInt> u2_poly(const std::vector<int>& lengths, int m);

struct GammaTable {
  int chains = 0;  // number of structure edges, 3(r-1) for cubic structures
  int max_k = 0;   // rows 0..max_k are filled
  std::vector<std::vector<BigInt>> gamma;  // gamma[k][j], 0 <= j <= k

  std::vector<BigInt> flatten_kj() const;
  std::vector<BigInt> flatten_jk() const;
};

// Disconnecting chain sets of a structure graph, either complete (stored as
// the complementary non-disconnecting sets, which are few) or truncated to
// sets of at most max_k chains.
class ChainCutIndex {
 public:
  static ChainCutIndex full(const Multigraph& s, std::uint64_t max_work = std::uint64_t{1} << 27);
  static ChainCutIndex truncated(const Multigraph& s, int max_k,
                                 std::uint64_t max_work = std::uint64_t{1} << 28);

  int chains() const { return m_; }
  int max_k() const { return max_k_; }
  bool complete() const { return complete_; }

  /// Row-major triangle gamma[k][j], k = 0..max_k.
  std::vector<std::uint64_t> gamma_counts(EdgeMask marks) const;
  GammaTable gamma(EdgeMask marks) const;
  /// Number of disconnecting k-sets containing every chain of `required`,
  /// k = 0..max_k.
  std::vector<std::uint64_t> containing(EdgeMask required) const;

 private:
  int m_ = 0;
  int max_k_ = 0;
  bool complete_ = false;
  // Grouped by size: non-disconnecting sets when complete, else
  // disconnecting sets.
  std::vector<std::vector<EdgeMask>> by_size_;
};

GammaTable gamma_table(const MarkedStructure& ms);

/// b_k^(1) = sum_j gamma[k][j] c^(k-j).
std::vector<BigInt> b1_coeffs(const GammaTable& gt, int c);

/// U^(1) as Bernstein coefficients over m edges.
std::vector<BigInt> u1_poly(const GammaTable& gt, int c, int m);

struct Decomposition {
  Distillation distillation;
  int c = 0;
  EdgeMask long_chains = 0;
  std::vector<BigInt> u1, u2, total, reference;
  bool holds = false;
};

/// Splits U_G into the two parts; needs every chain of length c or c+1.
/// The reference polynomial comes from brute force when m <= 28, else from
/// the exact engine.
Decomposition decompose(const Multigraph& g);
bool decompose_check(const Multigraph& g);

struct ObstructionProfile {
  std::array<int, 4> alpha{};  // vertices meeting i long chains
  std::array<int, 5> beta{};   // chains whose four neighbours hold i long chains
  std::vector<int> mu;         // mu[d-1] for d = 1..g_free-3
  std::vector<int> mu_all;     // mu[d-1] for every distance that occurs
  std::vector<std::vector<std::uint64_t>> rho;  // rho[e][k-3], k = 3..chains
  std::vector<int> rank;       // dense lexicographic rank of rho, 0 lowest
};

ObstructionProfile obstruction_profile(const MarkedStructure& ms, int g_free);

/// Long-chain pair counts by edge distance: out[d-1] = pairs at distance d,
/// for d = 1..max_d.
std::vector<int> separation_counts(const Multigraph& s, EdgeMask marks, int max_d,
                                   const std::vector<int>& distances);

}  // namespace relgraph
