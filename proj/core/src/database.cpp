#include "relgraph/database.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "relgraph/cutsets.hpp"
#include "relgraph/error.hpp"
#include "relgraph/graph_io.hpp"
#include "relgraph/parallel.hpp"
#include "relgraph/reliability.hpp"
#include "relgraph/spanning.hpp"

namespace relgraph {

namespace {

using ordered_json = nlohmann::ordered_json;

bool blank_or_header(const std::string& line) {
  if (line.find_first_not_of(" \t\r\n") == std::string::npos) return true;
  return line == ">>graph6<<" || line == ">>sparse6<<";
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  return s.substr(start);
}

Rational to_rational(double p) {
  const auto scaled = static_cast<long long>(std::llround(p * 1e6));
  return Rational(BigInt(scaled), BigInt(1000000));
}

}  // namespace

std::string record_id(const std::string& encoding) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : encoding) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

GraphRecord analyze_graph(const Multigraph& g, const AnalysisOptions& options) {
  if (g.has_loops()) throw InputError("graph has loops");
  if (!is_connected(g)) throw InputError("graph is disconnected");
  GraphRecord rec;
  rec.encoding = emit_canonical_line(g);
  rec.id = record_id(rec.encoding);
  rec.n = g.vertex_count();
  rec.m = g.edge_count();
  rec.r = g.redundancy();
  rec.girth = girth(g);
  rec.edge_connectivity = edge_connectivity(g);
  rec.is_simple = g.is_simple();

  UnrelPoly poly;
  if (rec.m <= options.brute_force_max_edges) {
    poly = unrel_bruteforce(g);
  } else {
    ExactLimits limits;
    if (options.force) limits.max_calls = std::numeric_limits<std::uint64_t>::max();
    poly = unrel_exact(g, limits);
  }
  rec.bernstein = to_decimal(poly.bernstein);
  const BigInt trees = tree_number(g);
  rec.tree_number = trees.str();
  rec.tree_balanced = is_tree_balanced(g).balanced;
  const auto k = regular_degree(g);
  if (k && *k >= 3 && rec.n <= 64 && rec.m <= kMaxMaskEdges) {
    rec.g_free = has_nontrivial_cutsets_up_to(g).g_free;
  }
  // Near-one identity: b_r = C(m, r) - T(G).
  if (poly.bernstein[static_cast<std::size_t>(rec.r)] != binomial(rec.m, rec.r) - trees) {
    throw Error("internal check failed: b_r != C(m, r) - T(G) for " + rec.encoding);
  }
  return rec;
}

std::string to_json_line(const GraphRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["encoding"] = r.encoding;
  j["n"] = r.n;
  j["m"] = r.m;
  j["r"] = r.r;
  j["girth"] = r.girth ? ordered_json(*r.girth) : ordered_json(nullptr);
  j["edge_connectivity"] = r.edge_connectivity;
  j["bernstein"] = r.bernstein;
  j["tree_number"] = r.tree_number;
  j["tree_balanced"] = r.tree_balanced;
  j["g_free"] = r.g_free ? ordered_json(*r.g_free) : ordered_json(nullptr);
  j["is_simple"] = r.is_simple;
  return j.dump();
}

GraphRecord parse_record(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    GraphRecord r;
    r.id = j.at("id").get<std::string>();
    r.encoding = j.at("encoding").get<std::string>();
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.r = j.at("r").get<int>();
    if (!j.at("girth").is_null()) r.girth = j.at("girth").get<int>();
    r.edge_connectivity = j.at("edge_connectivity").get<int>();
    r.bernstein = j.at("bernstein").get<std::vector<std::string>>();
    r.tree_number = j.at("tree_number").get<std::string>();
    r.tree_balanced = j.at("tree_balanced").get<bool>();
    if (!j.at("g_free").is_null()) r.g_free = j.at("g_free").get<int>();
    r.is_simple = j.at("is_simple").get<bool>();
    if (static_cast<int>(r.bernstein.size()) != r.m + 1) throw InputError("bernstein length is not m + 1");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad database record: ") + e.what());
  }
}

std::vector<GraphRecord> load_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<GraphRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

IngestResult ingest(const std::vector<std::string>& paths, const AnalysisOptions& options) {
  struct Job {
    std::string file;
    int line;
    std::string text;
  };
  std::vector<Job> jobs;
  IngestResult result;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) {
      result.errors.push_back({path, 0, "cannot open file"});
      continue;
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      line = trim(line);
      if (blank_or_header(line)) continue;
      jobs.push_back({path, number, line});
    }
  }

  std::vector<std::optional<GraphRecord>> records(jobs.size());
  std::vector<std::string> failures(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    try {
      records[i] = analyze_graph(parse_graph_line(jobs[i].text), options);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  std::map<std::string, GraphRecord> unique;  // keyed by encoding
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (records[i]) {
      unique.emplace(records[i]->encoding, std::move(*records[i]));
    } else {
      result.errors.push_back({jobs[i].file, jobs[i].line, failures[i]});
    }
  }
  for (auto& [encoding, rec] : unique) result.records.push_back(std::move(rec));
  std::sort(result.records.begin(), result.records.end(), [](const GraphRecord& a, const GraphRecord& b) {
    return std::tie(a.n, a.m, a.id, a.encoding) < std::tie(b.n, b.m, b.id, b.encoding);
  });
  // Hash collisions between different encodings get a numeric suffix.
  for (std::size_t start = 0; start < result.records.size();) {
    std::size_t stop = start + 1;
    while (stop < result.records.size() && result.records[stop].id == result.records[start].id) ++stop;
    for (std::size_t j = start + 1; j < stop; ++j) result.records[j].id += "-" + std::to_string(j - start);
    start = stop;
  }
  return result;
}

void write_jsonl(const std::vector<GraphRecord>& records, std::ostream& out) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<double> default_percentile_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 16; ++i) grid.push_back(0.05 * i);
  return grid;
}

std::vector<PercentileRow> percentiles(const std::vector<GraphRecord>& records, const std::vector<double>& grid,
                                       double p_max) {
  if (records.empty()) return {};
  for (const auto& r : records) {
    if (r.n != records.front().n || r.m != records.front().m) {
      throw InputError("percentile ranks need records sharing (n, m)");
    }
  }
  for (double p : grid) {
    if (!(p >= 0 && p <= p_max)) throw InputError("grid point " + std::to_string(p) + " outside [0, p_max]");
  }
  std::vector<UnrelPoly> polys;
  for (const auto& r : records) {
    UnrelPoly poly;
    poly.m = r.m;
    for (const auto& b : r.bernstein) poly.bernstein.emplace_back(b);
    polys.push_back(std::move(poly));
  }

  const std::size_t count = records.size();
  std::vector<PercentileRow> rows;
  for (double p : grid) {
    const Rational exact_p = to_rational(p);
    std::vector<Rational> value(count);
    parallel_for(count, [&](std::size_t i) { value[i] = eval_exact(polys[i], exact_p); });
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    std::vector<double> rank(count);
    for (std::size_t start = 0; start < count;) {
      std::size_t stop = start + 1;
      while (stop < count && value[order[stop]] == value[order[start]]) ++stop;
      const double mean = 0.5 * static_cast<double>(start + stop - 1);
      for (std::size_t t = start; t < stop; ++t) rank[order[t]] = mean;
      start = stop;
    }
    for (std::size_t i = 0; i < count; ++i) {
      PercentileRow row;
      row.p = p;
      row.id = records[i].id;
      row.unreliability = value[i].convert_to<double>();
      row.normalized_rank = count > 1 ? rank[i] / static_cast<double>(count - 1) : 0.0;
      row.girth = records[i].girth;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_percentiles_csv(const std::vector<PercentileRow>& rows, std::ostream& out) {
  out << "p,id,unreliability,normalized_rank,girth\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.4f,%s,%.12e,%.6f,", row.p, row.id.c_str(), row.unreliability,
                  row.normalized_rank);
    out << buf;
    if (row.girth) out << *row.girth;
    out << '\n';
  }
}

}  // namespace relgraph
