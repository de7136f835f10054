#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mgraphon/multigraph.hpp"

namespace mgraphon {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Text format: first non-blank line `n`, then one line `i j` per edge-list
/// entry (1-based; `i i` is a loop). Blank lines and `#` comments are skipped.
Multigraph read_graph(std::istream& in, const std::string& source = "<stream>");
Multigraph read_graph_file(const std::filesystem::path& path);

void write_graph(std::ostream& out, const Multigraph& g);

}  // namespace mgraphon
