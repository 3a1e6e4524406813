#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relgraph/cutsets.hpp"
#include "relgraph/database.hpp"
#include "relgraph/error.hpp"
#include "relgraph/graph_io.hpp"
#include "relgraph/optimizer.hpp"
#include "relgraph/reliability.hpp"
#include "relgraph/spanning.hpp"
#include "relgraph/structure.hpp"

namespace relgraph::cli {

namespace {

using json = nlohmann::ordered_json;

json strings(const std::vector<BigInt>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  return s.substr(start);
}

std::vector<Multigraph> read_graphs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<Multigraph> graphs;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line == ">>graph6<<" || line == ">>sparse6<<") continue;
    try {
      graphs.push_back(parse_graph_line(line));
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return graphs;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0) throw InputError("bad integer '" + item + "'");
    out.push_back(value);
  }
  return out;
}

std::vector<double> double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0) throw InputError("bad number '" + item + "'");
    out.push_back(value);
  }
  return out;
}

EdgeMask mask_of(const std::vector<int>& ids, int edge_count) {
  EdgeMask mask = 0;
  for (int id : ids) {
    if (id < 0 || id >= edge_count) throw InputError("chain id out of range: " + std::to_string(id));
    mask |= edge_bit(id);
  }
  return mask;
}

// Lengths reordered to the edge order of the structure's canonical line.
std::vector<int> canonical_lengths(const Distillation& d) {
  const auto order = d.structure.canonical_order();
  std::vector<int> out;
  for (EdgeId e : order) out.push_back(d.chain_lengths[static_cast<std::size_t>(e)]);
  return out;
}

json verdict_json(const Verdict& v, const std::vector<Multigraph>& pool) {
  json j;
  j["verdict"] = to_string(v.kind);
  j["reason"] = to_string(v.reason);
  j["candidates"] = json::array();
  for (const auto& c : v.candidates) {
    json item;
    item["pool_index"] = c.pool_index;
    item["graph"] = emit_canonical_line(pool[c.pool_index]);
    item["marked"] = serialize(c.marked);
    j["candidates"].push_back(item);
  }
  json evidence = json::object();
  for (const auto& [key, value] : v.evidence) evidence[key] = value;
  j["evidence"] = evidence;
  j["log"] = v.log;
  return j;
}

// Writes to --out when given, else to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct Options {
  std::string out;
  std::vector<std::string> inputs;
  std::string graph;
  std::string class_order;
  std::string marking_order;
  std::string lengths;
  std::string marks;
  std::string grid;
  std::vector<std::string> pool;
  int r = -1;
  int lambda = -1;
  int c = 0;
  int distance = 1;
  int brute_max = 22;
  double p_max = 0.8;
  bool force = false;
};

MarkedStructure structure_arg(const Options& o) {
  MarkedStructure ms = parse_marked_structure(o.graph);
  if (!o.marks.empty()) ms.long_chains = mask_of(int_list(o.marks), ms.structure.edge_count());
  validate(ms);
  return ms;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  AnalysisOptions options;
  options.force = o.force;
  options.brute_force_max_edges = o.brute_max;
  const auto result = ingest(o.inputs, options);
  Sink sink(o.out, out);
  write_jsonl(result.records, *sink);
  for (const auto& e : result.errors) err << e.file << ":" << e.line << ": " << e.message << "\n";
  err << result.records.size() << " records, " << result.errors.size() << " errors\n";
  return result.errors.empty() ? kExitOk : kExitInput;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Multigraph g = parse_graph_line(trim(o.graph));
  AnalysisOptions options;
  options.force = o.force;
  options.brute_force_max_edges = o.brute_max;
  const GraphRecord rec = analyze_graph(g, options);
  std::vector<BigInt> b;
  for (const auto& s : rec.bernstein) b.emplace_back(s);
  json j = json::parse(to_json_line(rec));
  j["power"] = strings(bernstein_to_power(b));
  Sink sink(o.out, out);
  *sink << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_classes(const Options& o, std::ostream& out) {
  std::vector<UnrelPoly> polys;
  std::vector<std::string> labels;
  std::vector<bool> simple;
  for (const auto& path : o.inputs) {
    if (ends_with(path, ".jsonl")) {
      for (const auto& rec : load_database(path)) {
        UnrelPoly p;
        p.m = rec.m;
        for (const auto& s : rec.bernstein) p.bernstein.emplace_back(s);
        polys.push_back(std::move(p));
        labels.push_back(rec.encoding);
        simple.push_back(rec.is_simple);
      }
    } else {
      for (const auto& g : read_graphs(path)) {
        polys.push_back(g.edge_count() <= o.brute_max ? unrel_bruteforce(g) : unrel_exact(g));
        labels.push_back(emit_canonical_line(g));
        simple.push_back(g.is_simple());
      }
    }
  }
  if (polys.empty()) throw InputError("no graphs given");
  const auto filtration = class_filtration(polys, parse_class_order(o.class_order));
  json j;
  j["order"] = to_string(filtration.order);
  j["graphs"] = polys.size();
  j["multigraphs"] = std::count(simple.begin(), simple.end(), false);
  j["levels"] = json::array();
  for (const auto& level : filtration.levels) {
    json item;
    item["k"] = level.k;
    item["coefficient"] = level.coefficient;
    item["survivors"] = json::array();
    for (auto i : level.survivors) item["survivors"].push_back(labels[i]);
    j["levels"].push_back(item);
  }
  j["winners"] = json::array();
  json kinds = json::array();
  for (auto i : filtration.final_survivors()) {
    j["winners"].push_back(labels[i]);
    kinds.push_back(simple[i] ? "simple" : "multigraph");
  }
  j["winner_kinds"] = kinds;
  Sink sink(o.out, out);
  *sink << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_distill(const Options& o, std::ostream& out) {
  const Distillation d = distill(parse_graph_line(trim(o.graph)));
  const auto lengths = canonical_lengths(d);
  json j;
  j["structure"] = emit_canonical_line(d.structure);
  j["chain_lengths"] = lengths;
  const int c = lengths.empty() ? 0 : *std::min_element(lengths.begin(), lengths.end());
  const bool two_lengths =
      std::all_of(lengths.begin(), lengths.end(), [c](int l) { return l == c || l == c + 1; });
  if (two_lengths && regular_degree(d.structure) == 3) {
    MarkedStructure ms;
    ms.structure = d.structure.canonical();
    for (std::size_t e = 0; e < lengths.size(); ++e)
      if (lengths[e] == c + 1) ms.long_chains |= edge_bit(static_cast<int>(e));
    j["c"] = c;
    j["lambda"] = std::popcount(ms.long_chains);
    j["marked"] = serialize(ms);
  }
  Sink sink(o.out, out);
  *sink << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_subdivide(const Options& o, std::ostream& out) {
  MarkedStructure ms = parse_marked_structure(o.graph);
  if (!o.marks.empty()) ms.long_chains = mask_of(int_list(o.marks), ms.structure.edge_count());
  std::vector<int> lengths;
  if (!o.lengths.empty()) {
    lengths = int_list(o.lengths);
  } else if (o.c > 0) {
    lengths = marked_lengths(ms.structure, ms.long_chains, o.c);
  } else {
    throw InputError("subdivide needs --lengths or --c");
  }
  if (static_cast<int>(lengths.size()) != ms.structure.edge_count())
    throw InputError("need one length per structure edge");
  Sink sink(o.out, out);
  *sink << emit_canonical_line(subdivide(ms.structure, lengths)) << "\n";
  return kExitOk;
}

int cmd_gamma(const Options& o, std::ostream& out) {
  const MarkedStructure ms = structure_arg(o);
  if (o.lambda >= 0 && o.lambda != ms.lambda())
    throw InputError("--lambda " + std::to_string(o.lambda) + " does not match " +
                     std::to_string(ms.lambda()) + " marked chains");
  const GammaTable gt = gamma_table(ms);
  json j;
  j["marked"] = serialize(ms);
  j["lambda"] = ms.lambda();
  j["gamma"] = json::array();
  for (const auto& row : gt.gamma) j["gamma"].push_back(strings(row));
  j["flatten_kj"] = strings(gt.flatten_kj());
  Sink sink(o.out, out);
  *sink << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_optimize(const Options& o, std::ostream& out) {
  const Multigraph s = parse_marked_structure(o.graph).structure;
  MarkedStructure probe{s, 0};
  validate(probe);
  if (o.r >= 0 && o.r != s.redundancy())
    throw InputError("--r " + std::to_string(o.r) + " does not match the structure's r = " +
                     std::to_string(s.redundancy()));
  const MarkingOrder order = parse_marking_order(o.marking_order);
  std::vector<EdgeMask> best;
  switch (order) {
    case MarkingOrder::KJ: best = minimize_kj(s, o.lambda); break;
    case MarkingOrder::JK: best = minimize_jk(s, o.lambda); break;
    case MarkingOrder::Obstruction: best = minimize_obstructions(s, o.lambda); break;
  }
  json j;
  j["order"] = to_string(order);
  j["lambda"] = o.lambda;
  j["count"] = best.size();
  j["markings"] = json::array();
  for (EdgeMask m : best) j["markings"].push_back(serialize(MarkedStructure{s, m}));
  Sink sink(o.out, out);
  *sink << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_algorithm1(const Options& o, std::ostream& out) {
  std::vector<Multigraph> pool;
  for (const auto& path : o.pool) {
    auto graphs = read_graphs(path);
    pool.insert(pool.end(), graphs.begin(), graphs.end());
  }
  const Verdict v = algorithm1(o.r, o.lambda, pool);
  Sink sink(o.out, out);
  *sink << verdict_json(v, pool).dump(2) << "\n";
  return kExitOk;
}

int cmd_export_lp(const Options& o, std::ostream& out) {
  const Multigraph s = parse_marked_structure(o.graph).structure;
  Sink sink(o.out, out);
  *sink << export_lp(s, o.lambda, o.distance);
  return kExitOk;
}

int cmd_percentiles(const Options& o, std::ostream& out) {
  std::vector<GraphRecord> records;
  for (const auto& path : o.inputs) {
    auto part = load_database(path);
    records.insert(records.end(), part.begin(), part.end());
  }
  const auto grid = o.grid.empty() ? default_percentile_grid() : double_list(o.grid);
  const auto rows = percentiles(records, grid, o.p_max);
  Sink sink(o.out, out);
  write_percentiles_csv(rows, *sink);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact all-terminal reliability tools for small graphs", "relgraph"};
  app.require_subcommand(1);
  Options o;

  auto with_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "write output to this file instead of stdout");
    return sub;
  };
  auto graph_arg = [&](CLI::App* sub, const char* what) {
    sub->add_option("graph", o.graph, what)->required();
  };

  auto* ingest_cmd = with_out(app.add_subcommand("ingest", "build a JSONL database from graph6/sparse6 files"));
  ingest_cmd->add_option("files", o.inputs, "input files")->required();
  ingest_cmd->add_flag("--force", o.force, "lift the exact engine's call budget");
  ingest_cmd->add_option("--brute-force-max-edges", o.brute_max, "use subset scan up to this many edges");

  auto* analyze_cmd = with_out(app.add_subcommand("analyze", "metrics, polynomial and tree data as JSON"));
  graph_arg(analyze_cmd, "graph6 or sparse6 line");
  analyze_cmd->add_flag("--force", o.force, "lift the exact engine's call budget");
  analyze_cmd->add_option("--brute-force-max-edges", o.brute_max, "use subset scan up to this many edges");

  auto* classes_cmd = with_out(app.add_subcommand("classes", "reliability class filtration over a set of graphs"));
  classes_cmd->add_option("files", o.inputs, "graph files or .jsonl databases")->required();
  classes_cmd->add_option("--order", o.class_order, "near-zero or near-one")->default_val("near-zero");
  classes_cmd->add_option("--brute-force-max-edges", o.brute_max, "use subset scan up to this many edges");

  auto* distill_cmd = with_out(app.add_subcommand("distill", "suppress degree-2 vertices"));
  graph_arg(distill_cmd, "graph6 or sparse6 line");

  auto* subdivide_cmd = with_out(app.add_subcommand("subdivide", "replace structure edges by paths"));
  graph_arg(subdivide_cmd, "structure line, optionally followed by marked chain ids");
  subdivide_cmd->add_option("--lengths", o.lengths, "comma-separated length per edge");
  subdivide_cmd->add_option("--c", o.c, "base length; marked chains get c+1");
  subdivide_cmd->add_option("--marks", o.marks, "comma-separated long chain ids");

  auto* gamma_cmd = with_out(app.add_subcommand("gamma", "gamma table of a marked structure"));
  graph_arg(gamma_cmd, "structure line, optionally followed by marked chain ids");
  gamma_cmd->add_option("--lambda", o.lambda, "expected number of long chains");
  gamma_cmd->add_option("--marks", o.marks, "comma-separated long chain ids");

  auto* optimize_cmd = with_out(app.add_subcommand("optimize", "best markings of a structure"));
  graph_arg(optimize_cmd, "cubic structure line");
  optimize_cmd->add_option("--r", o.r, "expected redundancy");
  optimize_cmd->add_option("--lambda", o.lambda, "number of long chains")->required();
  optimize_cmd->add_option("--order", o.marking_order, "kj, jk or obstruction")->default_val("kj");

  auto* alg_cmd = with_out(app.add_subcommand("algorithm1", "candidate search over a pool of cubic graphs"));
  alg_cmd->add_option("--r", o.r, "redundancy")->required();
  alg_cmd->add_option("--lambda", o.lambda, "number of long chains")->required();
  alg_cmd->add_option("--pool", o.pool, "graph files holding the pool")->required();

  auto* lp_cmd = with_out(app.add_subcommand("export-lp", "LP model of the long-chain separation problem"));
  graph_arg(lp_cmd, "cubic structure line");
  lp_cmd->add_option("--lambda", o.lambda, "number of long chains")->required();
  lp_cmd->add_option("--distance", o.distance, "edge distance whose pairs are minimized")->default_val(1);

  auto* pct_cmd = with_out(app.add_subcommand("percentiles", "normalized unreliability ranks as CSV"));
  pct_cmd->add_option("db", o.inputs, "JSONL databases")->required();
  pct_cmd->add_option("--grid", o.grid, "comma-separated p values");
  pct_cmd->add_option("--p-max", o.p_max, "upper bound for grid points")->default_val(0.8);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(o, out, err);
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (classes_cmd->parsed()) return cmd_classes(o, out);
    if (distill_cmd->parsed()) return cmd_distill(o, out);
    if (subdivide_cmd->parsed()) return cmd_subdivide(o, out);
    if (gamma_cmd->parsed()) return cmd_gamma(o, out);
    if (optimize_cmd->parsed()) return cmd_optimize(o, out);
    if (alg_cmd->parsed()) return cmd_algorithm1(o, out);
    if (lp_cmd->parsed()) return cmd_export_lp(o, out);
    if (pct_cmd->parsed()) return cmd_percentiles(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace relgraph::cli
