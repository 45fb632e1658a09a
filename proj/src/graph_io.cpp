#include "qtw/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace qtw {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_int(std::string_view tok, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Graph parse_gr(std::string_view text) {
  Graph g;
  bool have_header = false;
  long declared_edges = 0;
  long edge_lines = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != "tw") throw ParseError(line_no, "malformed header, expected 'p tw <n> <m>'");
      const long n = parse_int(tok[2], line_no);
      declared_edges = parse_int(tok[3], line_no);
      if (n < 0 || n > kMaxVertices) throw ParseError(line_no, "vertex count must be in [0, 63]");
      if (declared_edges < 0) throw ParseError(line_no, "negative edge count");
      g = Graph(static_cast<int>(n));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "edge line before header");
    if (tok.size() != 2) throw ParseError(line_no, "edge line must have two endpoints");
    const long u = parse_int(tok[0], line_no);
    const long v = parse_int(tok[1], line_no);
    if (u < 1 || v < 1 || u > g.size() || v > g.size()) throw ParseError(line_no, "endpoint out of range");
    if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
    g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    ++edge_lines;
  }
  if (!have_header) throw ParseError(line_no, "missing 'p tw' header");
  if (edge_lines != declared_edges) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                  std::to_string(edge_lines));
  }
  return g;
}

Graph read_gr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gr(buf.str());
}

std::string serialize_gr(const Graph& g) {
  std::ostringstream out;
  const auto edges = g.edges();
  out << "p tw " << g.size() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace qtw
