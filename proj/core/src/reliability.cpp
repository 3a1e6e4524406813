#include "relgraph/reliability.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>

#include "relgraph/error.hpp"
#include "relgraph/parallel.hpp"
#include "subsets.hpp"

namespace relgraph {

namespace {

void require_analyzable(const Multigraph& g) {
  if (g.has_loops()) throw InputError("graph has loops");
  if (!is_connected(g)) throw InputError("graph is disconnected");
}

std::strong_ordering lex(const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return std::strong_ordering::less;
    if (y[i] < x[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

void require_same_m(const UnrelPoly& x, const UnrelPoly& y) {
  if (x.m != y.m || x.bernstein.size() != y.bernstein.size()) {
    throw InputError("polynomials have different edge counts");
  }
}

}  // namespace

std::vector<BigInt> UnrelPoly::power() const { return bernstein_to_power(bernstein); }

UnrelPoly unrel_bruteforce(const Multigraph& g) {
  require_analyzable(g);
  const int m = g.edge_count();
  if (m > kBruteForceMaxEdges) {
    throw ResourceError("brute force handles at most 28 edges (got " + std::to_string(m) +
                        "); use unrel_exact");
  }
  const ConnectivityKernel kernel(g);
  const EdgeMask all = kernel.all_edges();
  const std::uint64_t total = std::uint64_t{1} << m;
  const std::size_t blocks = total < 4096 ? 1 : 256;
  const std::uint64_t per_block = total / blocks;

  std::vector<std::array<std::uint64_t, 64>> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    auto& counts = partial[b];
    counts.fill(0);
    const std::uint64_t start = b * per_block;
    const std::uint64_t stop = b + 1 == blocks ? total : start + per_block;
    for (std::uint64_t failed = start; failed < stop; ++failed) {
      if (!kernel.connected(all & ~failed)) ++counts[static_cast<std::size_t>(std::popcount(failed))];
    }
  });

  UnrelPoly out;
  out.m = m;
  out.bernstein.assign(static_cast<std::size_t>(m + 1), 0);
  for (const auto& counts : partial) {
    for (int k = 0; k <= m; ++k) out.bernstein[static_cast<std::size_t>(k)] += counts[static_cast<std::size_t>(k)];
  }
  return out;
}

UnrelPoly unrel_exact(const Multigraph& g, const ExactLimits& limits) {
  require_analyzable(g);
  const int m = g.edge_count();
  const auto connected = connected_spanning_counts(g, limits);
  UnrelPoly out;
  out.m = m;
  out.bernstein.resize(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) {
    out.bernstein[static_cast<std::size_t>(k)] =
        binomial(m, k) - BigInt(connected[static_cast<std::size_t>(m - k)]);
  }
  return out;
}

std::vector<BigInt> unrel_truncated(const Multigraph& g, int max_k) {
  require_analyzable(g);
  const int m = g.edge_count();
  max_k = std::min(max_k, m);
  const ConnectivityKernel kernel(g);
  const EdgeMask all = kernel.all_edges();
  std::vector<BigInt> out(static_cast<std::size_t>(max_k + 1), 0);
  for (int k = 1; k <= max_k; ++k) {
    std::uint64_t count = 0;
    detail::for_each_k_subset(m, k, [&](EdgeMask failed) {
      if (!kernel.connected(all & ~failed)) ++count;
      return true;
    });
    out[static_cast<std::size_t>(k)] = count;
  }
  return out;
}

double eval(const UnrelPoly& poly, double p) {
  const double q = 1.0 - p;
  // Kahan summation; terms are nonnegative so there is no cancellation.
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (int k = 0; k <= poly.m; ++k) {
    const auto& b = poly.bernstein[static_cast<std::size_t>(k)];
    if (b == 0) continue;
    const long double term = b.convert_to<long double>() * std::pow(static_cast<long double>(p), k) *
                             std::pow(static_cast<long double>(q), poly.m - k);
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(std::clamp(sum, 0.0L, 1.0L));
}

Rational eval_exact(const UnrelPoly& poly, const Rational& p) {
  if (p < 0 || p > 1) throw InputError("probability outside [0, 1]");
  const Rational q = 1 - p;
  std::vector<Rational> qpow(static_cast<std::size_t>(poly.m + 1), Rational(1));
  for (int i = 1; i <= poly.m; ++i) qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i - 1)] * q;
  Rational sum = 0;
  Rational ppow = 1;
  for (int k = 0; k <= poly.m; ++k) {
    sum += Rational(poly.bernstein[static_cast<std::size_t>(k)]) * ppow * qpow[static_cast<std::size_t>(poly.m - k)];
    ppow *= p;
  }
  return sum;
}

std::vector<BigInt> bernstein_to_power(const std::vector<BigInt>& b) {
  if (b.empty()) throw InputError("empty coefficient vector");
  const int m = static_cast<int>(b.size()) - 1;
  std::vector<BigInt> a(b.size(), 0);
  for (int k = 0; k <= m; ++k) {
    if (b[static_cast<std::size_t>(k)] == 0) continue;
    for (int i = k; i <= m; ++i) {
      BigInt term = b[static_cast<std::size_t>(k)] * binomial(m - k, i - k);
      if ((i - k) % 2) term = -term;
      a[static_cast<std::size_t>(i)] += term;
    }
  }
  return a;
}

std::vector<BigInt> power_to_bernstein(const std::vector<BigInt>& a, int m) {
  if (static_cast<int>(a.size()) != m + 1) throw InputError("coefficient vector length does not match m");
  std::vector<BigInt> b(a.size(), 0);
  for (int i = 0; i <= m; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int k = i; k <= m; ++k) b[static_cast<std::size_t>(k)] += a[static_cast<std::size_t>(i)] * binomial(m - i, k - i);
  }
  return b;
}

std::strong_ordering compare_near_zero(const UnrelPoly& x, const UnrelPoly& y) {
  require_same_m(x, y);
  return lex(x.bernstein, y.bernstein);
}

std::strong_ordering compare_near_one(const UnrelPoly& x, const UnrelPoly& y) {
  require_same_m(x, y);
  std::vector<BigInt> rx(x.bernstein.rbegin(), x.bernstein.rend());
  std::vector<BigInt> ry(y.bernstein.rbegin(), y.bernstein.rend());
  return lex(rx, ry);
}

std::string to_string(ClassOrder order) { return order == ClassOrder::NearZero ? "near-zero" : "near-one"; }

ClassOrder parse_class_order(const std::string& text) {
  if (text == "near-zero" || text == "near_zero") return ClassOrder::NearZero;
  if (text == "near-one" || text == "near_one") return ClassOrder::NearOne;
  throw InputError("unknown order '" + text + "' (expected near-zero or near-one)");
}

namespace {

ClassLevel next_level(const ClassLevel& previous, int k, int coefficient,
                      const std::vector<const std::vector<BigInt>*>& coeffs) {
  ClassLevel level;
  level.k = k;
  level.coefficient = coefficient;
  const auto idx = static_cast<std::size_t>(coefficient);
  const BigInt* best = nullptr;
  for (auto id : previous.survivors) {
    const auto& value = (*coeffs[id])[idx];
    if (!best || value < *best) best = &value;
  }
  for (auto id : previous.survivors) {
    if ((*coeffs[id])[idx] == *best) level.survivors.push_back(id);
  }
  return level;
}

ClassLevel everyone(std::size_t count) {
  ClassLevel level;
  for (std::size_t i = 0; i < count; ++i) level.survivors.push_back(i);
  return level;
}

}  // namespace

ClassFiltration class_filtration(const std::vector<UnrelPoly>& polys, ClassOrder order) {
  if (polys.empty()) throw InputError("no graphs to classify");
  const int m = polys.front().m;
  std::vector<const std::vector<BigInt>*> coeffs;
  for (const auto& p : polys) {
    if (p.m != m) throw InputError("graphs in a class filtration must share (n, m)");
    coeffs.push_back(&p.bernstein);
  }
  ClassFiltration out;
  out.order = order;
  ClassLevel current = everyone(polys.size());
  if (order == ClassOrder::NearZero) {
    for (int k = 1; k <= m; ++k) {
      current = next_level(current, k, k, coeffs);
      out.levels.push_back(current);
    }
  } else {
    for (int k = 0; k < m; ++k) {
      current = next_level(current, k, m - k, coeffs);
      out.levels.push_back(current);
    }
  }
  if (out.levels.empty()) out.levels.push_back(current);
  return out;
}

ClassFiltration class_filtration_prefix(const std::vector<std::vector<BigInt>>& prefixes) {
  if (prefixes.empty()) throw InputError("no graphs to classify");
  const std::size_t length = prefixes.front().size();
  std::vector<const std::vector<BigInt>*> coeffs;
  for (const auto& p : prefixes) {
    if (p.size() != length) throw InputError("coefficient prefixes differ in length");
    coeffs.push_back(&p);
  }
  ClassFiltration out;
  ClassLevel current = everyone(prefixes.size());
  for (int k = 1; k < static_cast<int>(length); ++k) {
    current = next_level(current, k, k, coeffs);
    out.levels.push_back(current);
  }
  if (out.levels.empty()) out.levels.push_back(current);
  return out;
}

bool verify_coefficient_comparison(const UnrelPoly& x, const UnrelPoly& y, int samples) {
  require_same_m(x, y);
  if (x == y) return true;
  // Walk from the smallest p upward while x stays strictly below y.
  int strict_run = 0;
  for (int j = samples; j >= 1; --j) {
    const Rational p(BigInt(1), BigInt(1) << j);
    if (!(eval_exact(x, p) < eval_exact(y, p))) break;
    ++strict_run;
  }
  return strict_run > 0;
}

}  // namespace relgraph
