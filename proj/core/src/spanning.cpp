#include "relgraph/spanning.hpp"

#include <string>

#include "relgraph/error.hpp"
#include "subsets.hpp"

namespace relgraph {

namespace {

// Bareiss elimination; exact for integer matrices.
BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
      }
      a[i][k] = 0;
    }
    previous = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Rational rational_determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(a[k], a[pivot]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Laplacian with row and column 0 removed; edges outside `keep` are skipped.
std::vector<std::vector<BigInt>> reduced_laplacian(const Multigraph& g, const std::vector<bool>& keep) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<BigInt>> lap(n - 1, std::vector<BigInt>(n - 1, 0));
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (!keep[static_cast<std::size_t>(id)]) continue;
    const auto& e = g.edge(id);
    if (e.is_loop()) continue;
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (u > 0) lap[u - 1][u - 1] += 1;
    if (v > 0) lap[v - 1][v - 1] += 1;
    if (u > 0 && v > 0) {
      lap[u - 1][v - 1] -= 1;
      lap[v - 1][u - 1] -= 1;
    }
  }
  return lap;
}

BigInt tree_number_keeping(const Multigraph& g, const std::vector<bool>& keep) {
  if (g.vertex_count() == 1) return 1;
  return determinant(reduced_laplacian(g, keep));
}

}  // namespace

BigInt tree_number(const Multigraph& g) {
  return tree_number_keeping(g, std::vector<bool>(static_cast<std::size_t>(g.edge_count()), true));
}

BigInt tree_number_minus_edge(const Multigraph& g, EdgeId e) {
  if (e < 0 || e >= g.edge_count()) throw InputError("edge id out of range: " + std::to_string(e));
  std::vector<bool> keep(static_cast<std::size_t>(g.edge_count()), true);
  keep[static_cast<std::size_t>(e)] = false;
  return tree_number_keeping(g, keep);
}

TreeBalance is_tree_balanced(const Multigraph& g) {
  TreeBalance out;
  if (g.edge_count() == 0) return out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const BigInt t = tree_number_minus_edge(g, e);
    if (e == 0 || t > out.max_value) {
      out.max_value = t;
      out.max_edge = e;
    }
    if (e == 0 || t < out.min_value) {
      out.min_value = t;
      out.min_edge = e;
    }
  }
  out.balanced = out.max_value == out.min_value;
  return out;
}

BigInt TreePoly::evaluate(const BigInt& c) const {
  BigInt value = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) value = value * c + *it;
  return value;
}

TreePoly tree_poly(const Multigraph& s, const std::vector<int>& offsets) {
  const int m = s.edge_count();
  if (static_cast<int>(offsets.size()) != m) throw InputError("one offset per structure edge is required");
  if (!is_connected(s)) throw InputError("structure graph is disconnected");
  if (m > 30) throw ResourceError("tree_poly enumerates edge subsets; at most 30 structure edges");
  TreePoly out;
  out.r = s.redundancy();
  out.coefficients.assign(static_cast<std::size_t>(out.r + 1), 0);
  std::vector<bool> keep(static_cast<std::size_t>(m));
  // Removing more than r edges leaves too few for a spanning tree.
  for (int size = 0; size <= out.r; ++size) {
    detail::for_each_k_subset(m, size, [&](std::uint64_t removed) {
      BigInt weight = 1;
      for (int e = 0; e < m; ++e) {
        keep[static_cast<std::size_t>(e)] = !((removed >> e) & 1);
        if (!keep[static_cast<std::size_t>(e)]) weight *= offsets[static_cast<std::size_t>(e)];
      }
      if (weight != 0) {
        out.coefficients[static_cast<std::size_t>(out.r - size)] += tree_number_keeping(s, keep) * weight;
      }
      return true;
    });
  }
  return out;
}

BigInt tree_number_of_subdivision(const Multigraph& s, const std::vector<int>& lengths) {
  const int m = s.edge_count();
  if (static_cast<int>(lengths.size()) != m) throw InputError("one length per structure edge is required");
  for (int len : lengths) {
    if (len < 1) throw InputError("chain lengths must be at least 1");
  }
  const auto n = static_cast<std::size_t>(s.vertex_count());
  if (n == 1) {
    BigInt product = 1;
    for (int len : lengths) product *= len;
    return product;
  }
  // A chain of length l behaves like one edge of conductance 1/l, and
  // sum_T prod_{e not in T} l_e = (prod_e l_e) * sum_T prod_{e in T} 1/l_e.
  std::vector<std::vector<Rational>> lap(n - 1, std::vector<Rational>(n - 1, Rational(0)));
  BigInt product = 1;
  for (EdgeId id = 0; id < m; ++id) {
    const auto& e = s.edge(id);
    product *= lengths[static_cast<std::size_t>(id)];
    if (e.is_loop()) continue;
    const Rational w(BigInt(1), BigInt(lengths[static_cast<std::size_t>(id)]));
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (u > 0) lap[u - 1][u - 1] += w;
    if (v > 0) lap[v - 1][v - 1] += w;
    if (u > 0 && v > 0) {
      lap[u - 1][v - 1] -= w;
      lap[v - 1][u - 1] -= w;
    }
  }
  const Rational total = rational_determinant(std::move(lap)) * Rational(product);
  if (denominator(total) != 1) throw Error("subdivision tree number is not integral");
  return numerator(total);
}

}  // namespace relgraph
