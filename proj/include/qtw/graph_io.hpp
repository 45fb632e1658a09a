#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qtw/graph.hpp"

namespace qtw {

/// Malformed `.gr` input; `line()` is 1-based (0 when the problem is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses PACE-2017 treewidth input: `c` comments, `p tw <n> <m>`, then `u v` edge lines
/// with 1-based endpoints. Duplicate edges collapse; self-loops are rejected.
Graph parse_gr(std::string_view text);
Graph read_gr(const std::filesystem::path& path);

std::string serialize_gr(const Graph& g);

}  // namespace qtw
