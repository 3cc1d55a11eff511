#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "hypergraph.hpp"

namespace deltasys {

// Text format: a header line "n k", then one edge per line as whitespace
// separated vertices. Lines whose first non-blank character is '#' and blank
// lines are ignored.

namespace detail {

inline std::vector<long long> parse_ints(std::string_view line, int line_no) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
    if (ec != std::errc{} || ptr != line.data() + end)
      throw ParseError(line_no, "not an integer: '" + std::string(line.substr(pos, end - pos)) + "'");
    out.push_back(value);
    pos = end;
  }
  return out;
}

inline bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

} // namespace detail

inline Hypergraph parse_hypergraph(std::string_view text) {
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  int k = 0;
  std::vector<VertexSet> edges;
  std::vector<int> edge_lines;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (detail::is_blank_or_comment(line)) {
      if (end == text.size()) break;
      continue;
    }
    const auto values = detail::parse_ints(line, line_no);
    if (!have_header) {
      if (values.size() != 2) throw ParseError(line_no, "header must be 'n k'");
      if (values[0] < 1 || values[0] > kMaxVertices)
        throw ParseError(line_no, "n must lie in [1, " + std::to_string(kMaxVertices) + "]");
      if (values[1] < 2 || values[1] > values[0]) throw ParseError(line_no, "k must satisfy 2 <= k <= n");
      n = static_cast<int>(values[0]);
      k = static_cast<int>(values[1]);
      have_header = true;
    } else {
      if (static_cast<int>(values.size()) != k)
        throw ParseError(line_no, "expected " + std::to_string(k) + " vertices, found " +
                                      std::to_string(values.size()));
      VertexSet e;
      for (long long v : values) {
        if (v < 1 || v > n) throw ParseError(line_no, "vertex " + std::to_string(v) + " outside [1, " +
                                                          std::to_string(n) + "]");
        e.push_back(static_cast<Vertex>(v));
      }
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw ParseError(line_no, "repeated vertex");
      edges.push_back(std::move(e));
      edge_lines.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, "missing 'n k' header");

  // Report duplicates against the line where the repeat occurs.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (edges[order[i]] == edges[order[i - 1]])
      throw ParseError(edge_lines[std::max(order[i], order[i - 1])], "duplicate edge " + to_string(edges[order[i]]));

  return Hypergraph(n, k, std::move(edges));
}

inline std::string serialize_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  out << h.n() << ' ' << h.k() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
  return out.str();
}

} // namespace deltasys
