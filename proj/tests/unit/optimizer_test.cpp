#include <gtest/gtest.h>

#include <bit>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "../oracles.hpp"
#include "relgraph/error.hpp"
#include "relgraph/graph_io.hpp"
#include "relgraph/optimizer.hpp"

using namespace relgraph;

namespace {

// Minimal reader for the LP subset the exporter writes.
struct LinearRow {
  std::map<std::string, long> coef;
  std::string sense;
  long rhs = 0;
};

struct LpModel {
  LinearRow objective;
  std::vector<LinearRow> rows;
  std::vector<std::string> binaries;
};

LpModel parse_lp(const std::string& text) {
  LpModel model;
  std::istringstream in(text);
  std::string line, section;
  std::vector<std::string> tokens;
  std::vector<std::vector<std::string>> rows;  // objective first
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize" || line == "Subject To" || line == "Binary" || line == "End") {
      section = line;
      continue;
    }
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      if (section == "Binary") {
        model.binaries.push_back(w);
      } else if (w.back() == ':') {
        rows.emplace_back();
      } else {
        rows.back().push_back(w);
      }
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    LinearRow row;
    long sign = 1, factor = 1;
    bool rhs_next = false;
    for (const auto& t : rows[r]) {
      if (rhs_next) {
        row.rhs = std::stol(t);
        rhs_next = false;
      } else if (t == "+") {
        sign = 1;
      } else if (t == "-") {
        sign = -1;
      } else if (t == "=" || t == ">=" || t == "<=") {
        row.sense = t;
        rhs_next = true;
      } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
        factor = std::stol(t);
      } else {
        row.coef[t] += sign * factor;
        sign = 1;
        factor = 1;
      }
    }
    if (r == 0) model.objective = row;
    else model.rows.push_back(row);
  }
  return model;
}

// Exhaustive over the x variables; each y takes the smallest feasible value.
long solve_lp(const LpModel& model) {
  std::vector<std::string> xs, ys;
  for (const auto& b : model.binaries) (b[0] == 'x' ? xs : ys).push_back(b);
  long best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::map<std::string, long> value;
    for (std::size_t i = 0; i < xs.size(); ++i) value[xs[i]] = static_cast<long>(mask >> i & 1);
    for (const auto& y : ys) value[y] = 0;
    auto holds = [&](const LinearRow& row) {
      long lhs = 0;
      for (const auto& [v, c] : row.coef) lhs += c * value[v];
      if (row.sense == "=") return lhs == row.rhs;
      if (row.sense == ">=") return lhs >= row.rhs;
      return lhs <= row.rhs;
    };
    for (const auto& y : ys) {
      for (const auto& row : model.rows)
        if (row.coef.count(y) && !holds(row)) value[y] = 1;
    }
    bool feasible = true;
    for (const auto& row : model.rows) feasible = feasible && holds(row);
    if (!feasible) continue;
    long obj = 0;
    for (const auto& [v, c] : model.objective.coef) obj += c * value[v];
    if (best < 0 || obj < best) best = obj;
  }
  return best;
}

std::vector<EdgeMask> every_marking(int m, int lambda) {
  std::vector<EdgeMask> out;
  for (EdgeMask x = 0; x < (EdgeMask{1} << m); ++x)
    if (std::popcount(x) == lambda) out.push_back(x);
  return out;
}

template <class Key>
std::vector<EdgeMask> argmin(const std::vector<EdgeMask>& all, Key key) {
  std::vector<EdgeMask> best;
  decltype(key(EdgeMask{})) best_key{};
  for (EdgeMask x : all) {
    auto k = key(x);
    if (best.empty() || k < best_key) {
      best = {x};
      best_key = k;
    } else if (k == best_key) {
      best.push_back(x);
    }
  }
  return best;
}

// Rotation of the Petersen drawing as an edge permutation.
std::vector<int> petersen_rotation() {
  const auto g = oracle::petersen();
  auto rot = [](int v) { return v < 5 ? (v + 1) % 5 : 5 + (v - 5 + 1) % 5; };
  std::vector<int> perm(15);
  for (int e = 0; e < 15; ++e) {
    const int a = rot(g.edge(e).u), b = rot(g.edge(e).v);
    for (int f = 0; f < 15; ++f)
      if ((g.edge(f).u == a && g.edge(f).v == b) || (g.edge(f).u == b && g.edge(f).v == a)) perm[static_cast<std::size_t>(e)] = f;
  }
  return perm;
}

std::vector<Multigraph> load(const std::string& name) {
  std::ifstream in(std::string(RELGRAPH_TEST_DATA) + "/" + name);
  std::vector<Multigraph> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_graph_line(line));
  return out;
}

}  // namespace

TEST(Optimizer, MinimizeKjMatchesExhaustiveScan) {
  for (const auto& s : {oracle::k4(), oracle::k33(), oracle::petersen()}) {
    const auto index = ChainCutIndex::full(s);
    for (int lambda : {1, 2, 4}) {
      const auto all = every_marking(s.edge_count(), lambda);
      auto kj = [&](EdgeMask x) { return index.gamma(x).flatten_kj(); };
      auto jk = [&](EdgeMask x) { return index.gamma(x).flatten_jk(); };
      EXPECT_EQ(minimize_kj(s, lambda), argmin(all, kj));
      EXPECT_EQ(minimize_jk(s, lambda), argmin(all, jk));
      auto obstruction = [&](EdgeMask x) { return obstruction_key(s, x); };
      EXPECT_EQ(minimize_obstructions(s, lambda), argmin(all, obstruction));
    }
  }
}

TEST(Optimizer, OutputsAreOrbitClosed) {
  const auto s = oracle::petersen();
  const auto perm = petersen_rotation();
  auto image = [&](EdgeMask x) {
    EdgeMask y = 0;
    for (int e = 0; e < 15; ++e)
      if (x >> e & 1) y |= edge_bit(perm[static_cast<std::size_t>(e)]);
    return y;
  };
  for (int lambda : {2, 3, 5}) {
    for (const auto& result : {minimize_kj(s, lambda), minimize_jk(s, lambda)}) {
      const std::set<EdgeMask> set(result.begin(), result.end());
      for (EdgeMask x : result) EXPECT_TRUE(set.count(image(x)));
    }
  }
}

TEST(Optimizer, RankThenSeparationAgreesWithJk) {
  // Petersen only has trivial cuts below g_free = 5.
  const auto s = oracle::petersen();
  for (int lambda = 1; lambda <= 6; ++lambda) EXPECT_EQ(rank_then_separation(s, lambda, 5), minimize_jk(s, lambda)) << lambda;
}

TEST(Optimizer, LpOptimumMatchesExhaustiveMinimum) {
  for (const auto& s : {oracle::k4(), oracle::k33(), oracle::petersen()}) {
    for (int lambda : {2, 3, 5}) {
      for (int d : {1, 2, 3}) {
        const auto model = parse_lp(export_lp(s, lambda, d));
        EXPECT_EQ(model.binaries.size(), model.rows.size() - 1 + static_cast<std::size_t>(s.edge_count()));
        EXPECT_EQ(solve_lp(model), min_pairs_at_distance(s, lambda, d)) << lambda << " " << d;
      }
    }
  }
}

TEST(Optimizer, LpWithoutPairsStillParses) {
  const auto model = parse_lp(export_lp(oracle::k4(), 2, 5));
  EXPECT_TRUE(model.rows.size() == 1);
  EXPECT_EQ(solve_lp(model), 0);
}

TEST(Optimizer, OrderNames) {
  EXPECT_EQ(parse_marking_order("jk"), MarkingOrder::JK);
  EXPECT_EQ(to_string(MarkingOrder::Obstruction), "obstruction");
  EXPECT_THROW(parse_marking_order("xyz"), InputError);
}

TEST(Optimizer, Algorithm1PetersenPool) {
  const auto pool = load("cubic10.g6");
  ASSERT_EQ(pool.size(), 19U);
  const auto v = algorithm1(6, 0, pool);
  EXPECT_EQ(v.kind, VerdictKind::Candidate);
  ASSERT_EQ(v.candidates.size(), 1U);
  EXPECT_EQ(girth(pool[v.candidates[0].pool_index]), 5);
  EXPECT_EQ(v.candidates[0].marked.lambda(), 0);
  // deterministic
  const auto again = algorithm1(6, 0, pool);
  EXPECT_EQ(serialize(again.candidates[0].marked), serialize(v.candidates[0].marked));
}

TEST(Optimizer, Algorithm1WagnerIsNotTreeBalanced) {
  const auto pool = load("cubic8.g6");
  const auto v = algorithm1(5, 2, pool);
  EXPECT_EQ(v.kind, VerdictKind::NoUniform);
  EXPECT_EQ(v.reason, VerdictReason::NotTreeBalanced);
}

TEST(Optimizer, Algorithm1RejectsBadPools) {
  EXPECT_THROW(algorithm1(6, 0, {}), InputError);
  EXPECT_THROW(algorithm1(5, 0, load("cubic10.g6")), InputError);
}
