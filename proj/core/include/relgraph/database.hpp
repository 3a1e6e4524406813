#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relgraph/graph.hpp"

namespace relgraph {

struct GraphRecord {
  std::string id;
  std::string encoding;
  int n = 0;
  int m = 0;
  int r = 0;
  std::optional<int> girth;
  int edge_connectivity = 0;
  std::vector<std::string> bernstein;  // decimal strings, b_0..b_m
  std::string tree_number;
  bool tree_balanced = false;
  std::optional<int> g_free;  // regular graphs of degree >= 3 only
  bool is_simple = false;

  friend bool operator==(const GraphRecord&, const GraphRecord&) = default;
};

struct AnalysisOptions {
  int brute_force_max_edges = 22;
  bool force = false;  // lift the exact engine's call budget
};

/// 16 hex digits of the FNV-1a hash of the encoding line.
std::string record_id(const std::string& encoding);

GraphRecord analyze_graph(const Multigraph& g, const AnalysisOptions& options = {});

std::string to_json_line(const GraphRecord& record);
GraphRecord parse_record(const std::string& line);
std::vector<GraphRecord> load_database(const std::string& path);

struct IngestError {
  std::string file;
  int line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<GraphRecord> records;  // sorted by (n, m, id)
  std::vector<IngestError> errors;
};

/// Reads graph6/sparse6 lines (blank lines and headers skipped), analyzes
/// each graph in parallel and returns the sorted, de-duplicated records.
IngestResult ingest(const std::vector<std::string>& paths, const AnalysisOptions& options = {});

void write_jsonl(const std::vector<GraphRecord>& records, std::ostream& out);

struct PercentileRow {
  double p = 0;
  std::string id;
  double unreliability = 0;
  double normalized_rank = 0;  // 0 = most reliable; ties share the mean rank
  std::optional<int> girth;
};

/// p = 0.05, 0.10, ..., 0.80.
std::vector<double> default_percentile_grid();

std::vector<PercentileRow> percentiles(const std::vector<GraphRecord>& records, const std::vector<double>& grid,
                                       double p_max = 0.8);

void write_percentiles_csv(const std::vector<PercentileRow>& rows, std::ostream& out);

}  // namespace relgraph
