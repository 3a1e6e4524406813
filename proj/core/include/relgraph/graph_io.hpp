#pragma once

#include <string>
#include <string_view>

#include "relgraph/graph.hpp"

namespace relgraph {

/// Decodes one graph6 line. A leading ">>graph6<<" header and a trailing
/// newline are accepted. Throws ParseError naming the offending byte offset.
Multigraph parse_graph6(std::string_view text);

/// Decodes one sparse6 line (leading ':'), preserving loops and parallel
/// edges in encoding order. A ">>sparse6<<" header is accepted.
Multigraph parse_sparse6(std::string_view text);

/// Dispatches on the first significant character.
Multigraph parse_graph_line(std::string_view text);

/// Header-free graph6 line. Throws InputError for loops or parallel edges.
std::string emit_graph6(const Multigraph& g);

/// Header-free sparse6 line, bit-compatible with nauty's encoder. Edges are
/// written in canonical (v, u) order.
std::string emit_sparse6(const Multigraph& g);

/// graph6 for simple graphs, sparse6 otherwise.
std::string emit_canonical_line(const Multigraph& g);

}  // namespace relgraph
