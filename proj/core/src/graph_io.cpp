#include "relgraph/graph_io.hpp"

#include <cstdint>
#include <vector>

#include "relgraph/error.hpp"

namespace relgraph {

namespace {

constexpr int kBias = 63;
constexpr std::string_view kGraph6Header = ">>graph6<<";
constexpr std::string_view kSparse6Header = ">>sparse6<<";

std::string_view trim_line(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  return text;
}

// Reads N(n) starting at `pos`; advances pos. `base` is the offset of text[0]
// in the caller's original line, for error reporting.
std::uint64_t read_size(std::string_view text, std::size_t& pos, std::size_t base) {
  auto byte_at = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError("truncated vertex count", base + i);
    const int c = static_cast<unsigned char>(text[i]);
    if (c < kBias || c > kBias + 63) throw ParseError("byte out of range in vertex count", base + i);
    return c - kBias;
  };
  const int first = byte_at(pos);
  if (first < 63) {
    ++pos;
    return static_cast<std::uint64_t>(first);
  }
  int groups = 3;
  std::size_t start = pos + 1;
  if (pos + 1 < text.size() && text[pos + 1] == '~') {
    groups = 6;
    start = pos + 2;
  }
  std::uint64_t value = 0;
  for (int i = 0; i < groups; ++i) {
    value = (value << 6) | static_cast<std::uint64_t>(byte_at(start + static_cast<std::size_t>(i)));
  }
  pos = start + static_cast<std::size_t>(groups);
  return value;
}

void write_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else {
    out.append("~~");
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  }
}

int bits_for(std::uint64_t n) {
  int nb = 0;
  for (std::uint64_t i = n == 0 ? 0 : n - 1; i > 0; i >>= 1) ++nb;
  return nb;
}

constexpr std::uint64_t kMaxVertices = 1U << 20;

}  // namespace

Multigraph parse_graph6(std::string_view text) {
  text = trim_line(text);
  std::size_t base = 0;
  if (text.starts_with(kGraph6Header)) {
    text.remove_prefix(kGraph6Header.size());
    base = kGraph6Header.size();
  }
  if (text.empty()) throw ParseError("empty graph6 line", base);
  std::size_t pos = 0;
  const std::uint64_t n = read_size(text, pos, base);
  if (n == 0) throw ParseError("graph has no vertices", base);
  if (n > kMaxVertices) throw ParseError("vertex count too large", base);
  const std::uint64_t bits = n * (n - 1) / 2;
  const std::size_t expected = pos + static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() < expected) throw ParseError("truncated adjacency data", base + text.size());
  if (text.size() > expected) throw ParseError("trailing bytes after adjacency data", base + expected);
  for (std::size_t i = pos; i < expected; ++i) {
    const int c = static_cast<unsigned char>(text[i]);
    if (c < kBias || c > kBias + 63) throw ParseError("byte out of range", base + i);
  }
  // Padding bits in the final byte must be zero.
  if (bits % 6 != 0) {
    const int last = static_cast<unsigned char>(text[expected - 1]) - kBias;
    const int pad = static_cast<int>(6 - bits % 6);
    if ((last & ((1 << pad) - 1)) != 0) throw ParseError("nonzero padding bits", base + expected - 1);
  }
  Multigraph g(static_cast<int>(n));
  std::uint64_t bit = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i, ++bit) {
      const int byte = static_cast<unsigned char>(text[pos + static_cast<std::size_t>(bit / 6)]) - kBias;
      if ((byte >> (5 - bit % 6)) & 1) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return g;
}

Multigraph parse_sparse6(std::string_view text) {
  text = trim_line(text);
  std::size_t base = 0;
  if (text.starts_with(kSparse6Header)) {
    text.remove_prefix(kSparse6Header.size());
    base = kSparse6Header.size();
  }
  if (text.empty() || text.front() != ':') throw ParseError("sparse6 line must start with ':'", base);
  std::size_t pos = 1;
  const std::uint64_t n = read_size(text, pos, base);
  if (n == 0) throw ParseError("graph has no vertices", base);
  if (n > kMaxVertices) throw ParseError("vertex count too large", base);
  const int nb = bits_for(n);

  for (std::size_t i = pos; i < text.size(); ++i) {
    const int c = static_cast<unsigned char>(text[i]);
    if (c < kBias || c > kBias + 63) throw ParseError("byte out of range", base + i);
  }
  const std::uint64_t total_bits = 6 * static_cast<std::uint64_t>(text.size() - pos);
  std::uint64_t cursor = 0;
  auto read_bits = [&](int count) {
    std::uint64_t value = 0;
    for (int i = 0; i < count; ++i, ++cursor) {
      const int byte = static_cast<unsigned char>(text[pos + static_cast<std::size_t>(cursor / 6)]) - kBias;
      value = (value << 1) | static_cast<std::uint64_t>((byte >> (5 - cursor % 6)) & 1);
    }
    return value;
  };

  Multigraph g(static_cast<int>(n));
  std::uint64_t v = 0;
  // An incomplete (b, x) pair at the end is padding and is discarded.
  while (cursor + 1 + static_cast<std::uint64_t>(nb) <= total_bits) {
    if (read_bits(1)) ++v;
    const std::uint64_t x = read_bits(nb);
    if (x > v) {
      v = x;
    } else if (v < n) {
      g.add_edge(static_cast<Vertex>(x), static_cast<Vertex>(v));
    }
  }
  return g;
}

Multigraph parse_graph_line(std::string_view text) {
  text = trim_line(text);
  if (text.starts_with(kSparse6Header) || text.starts_with(":")) return parse_sparse6(text);
  if (text.starts_with(";")) throw ParseError("incremental sparse6 is not supported", 0);
  if (text.starts_with("&")) throw ParseError("digraph6 is not supported", 0);
  return parse_graph6(text);
}

std::string emit_graph6(const Multigraph& g) {
  if (!g.is_simple()) throw InputError("graph6 cannot encode loops or parallel edges");
  const auto n = static_cast<std::uint64_t>(g.vertex_count());
  std::string out;
  write_size(out, n);
  const std::uint64_t bits = n * (n - 1) / 2;
  std::vector<std::uint8_t> payload(static_cast<std::size_t>((bits + 5) / 6), 0);
  for (const auto& e : g.edges()) {
    const auto i = static_cast<std::uint64_t>(e.u);
    const auto j = static_cast<std::uint64_t>(e.v);
    const std::uint64_t bit = j * (j - 1) / 2 + i;
    payload[static_cast<std::size_t>(bit / 6)] |= static_cast<std::uint8_t>(1U << (5 - bit % 6));
  }
  for (auto byte : payload) out.push_back(static_cast<char>(byte + kBias));
  return out;
}

std::string emit_sparse6(const Multigraph& g) {
  const auto n = static_cast<std::uint64_t>(g.vertex_count());
  const int nb = bits_for(n);
  std::string out = ":";
  write_size(out, n);

  int k = 6;  // free bits left in the current output byte
  int x = 0;
  auto push_bit = [&](int bit) {
    x = (x << 1) | bit;
    if (--k == 0) {
      out.push_back(static_cast<char>(kBias + x));
      k = 6;
      x = 0;
    }
  };
  auto push_value = [&](std::uint64_t value) {
    for (int r = nb - 1; r >= 0; --r) push_bit(static_cast<int>((value >> r) & 1));
  };

  std::uint64_t lastj = 0;
  for (EdgeId id : g.canonical_order()) {
    const auto& e = g.edge(id);
    const auto i = static_cast<std::uint64_t>(e.u);
    const auto j = static_cast<std::uint64_t>(e.v);
    if (j == lastj) {
      push_bit(0);
    } else {
      push_bit(1);
      if (j > lastj + 1) {
        push_value(j);
        push_bit(0);
      }
      lastj = j;
    }
    push_value(i);
  }
  if (k != 6) {
    if (k >= nb + 1 && lastj + 2 == n && n == (std::uint64_t{1} << nb)) {
      out.push_back(static_cast<char>(kBias + ((x << k) | ((1 << (k - 1)) - 1))));
    } else {
      out.push_back(static_cast<char>(kBias + ((x << k) | ((1 << k) - 1))));
    }
  }
  return out;
}

std::string emit_canonical_line(const Multigraph& g) {
  return g.is_simple() ? emit_graph6(g) : emit_sparse6(g);
}

}  // namespace relgraph
