#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "relgraph/bigint.hpp"
#include "relgraph/graph.hpp"

namespace relgraph {

// Unreliability U(p) = sum_k b_k p^k (1-p)^(m-k), p the edge failure
// probability; b_k counts the disconnecting k-subsets of edges.
struct UnrelPoly {
  int m = 0;
  std::vector<BigInt> bernstein;  // b_0..b_m

  std::vector<BigInt> power() const;  // a_0..a_m with U = sum a_i p^i
  friend bool operator==(const UnrelPoly&, const UnrelPoly&) = default;
};

struct ExactLimits {
  std::uint64_t max_calls = std::uint64_t{1} << 26;
};

inline constexpr int kBruteForceMaxEdges = 28;

/// Scans all 2^m failure sets. m <= 28.
UnrelPoly unrel_bruteforce(const Multigraph& g);

/// Deletion-contraction with series, parallel and pendant reductions. m <= 60.
UnrelPoly unrel_exact(const Multigraph& g, const ExactLimits& limits = {});

/// b_0..b_max_k only, by scanning failure sets of size <= max_k.
std::vector<BigInt> unrel_truncated(const Multigraph& g, int max_k);

/// N_i = number of connected spanning subgraphs with i edges, i = 0..m.
std::vector<std::uint64_t> connected_spanning_counts(const Multigraph& g,
                                                     const ExactLimits& limits = {});

double eval(const UnrelPoly& poly, double p);
Rational eval_exact(const UnrelPoly& poly, const Rational& p);

std::vector<BigInt> bernstein_to_power(const std::vector<BigInt>& b);
std::vector<BigInt> power_to_bernstein(const std::vector<BigInt>& a, int m);

/// Lexicographic on b_1..b_m.
std::strong_ordering compare_near_zero(const UnrelPoly& x, const UnrelPoly& y);
/// Lexicographic on b_m..b_1.
std::strong_ordering compare_near_one(const UnrelPoly& x, const UnrelPoly& y);

enum class ClassOrder { NearZero, NearOne };

std::string to_string(ClassOrder order);
ClassOrder parse_class_order(const std::string& text);

struct ClassLevel {
  int k = 0;
  int coefficient = 0;  // index of the b coefficient minimized at this level
  std::vector<std::size_t> survivors;
};

struct ClassFiltration {
  ClassOrder order = ClassOrder::NearZero;
  std::vector<ClassLevel> levels;

  const std::vector<std::size_t>& final_survivors() const { return levels.back().survivors; }
};

/// Near zero: level k (1..m) keeps the minimizers of b_k among the previous
/// level's survivors. Near one: level k (0..m-1) minimizes b_(m-k).
ClassFiltration class_filtration(const std::vector<UnrelPoly>& polys, ClassOrder order);

/// Near-zero filtration over coefficient prefixes b_0..b_K (all of equal
/// length), e.g. from unrel_truncated. Levels run 1..K.
ClassFiltration class_filtration_prefix(const std::vector<std::vector<BigInt>>& prefixes);

/// Numerical sanity check: with x below y near zero, U_x(p) <= U_y(p) on the
/// grid p = 2^-j, j = 1..samples, and the inequality turns strict somewhere.
bool verify_coefficient_comparison(const UnrelPoly& x, const UnrelPoly& y, int samples = 60);

}  // namespace relgraph
