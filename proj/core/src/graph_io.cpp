#include "mgraphon/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mgraphon {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool blank(const std::string& s) {
  for (char c : s) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Multigraph read_graph(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> n) || n < 0 || (ss >> extra && extra[0] != '#'))
      throw ParseError(source, lineno, "expected vertex count, got '" + line + "'");
    break;
  }
  if (n < 0) throw ParseError(source, lineno, "missing vertex count");
  Multigraph g(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::istringstream ss(line);
    long long i = 0, j = 0;
    std::string extra;
    if (!(ss >> i >> j) || (ss >> extra && extra[0] != '#'))
      throw ParseError(source, lineno, "expected 'i j', got '" + line + "'");
    if (i < 1 || j < 1 || i > n || j > n)
      throw ParseError(source, lineno, "vertex out of range 1.." + std::to_string(n));
    g.add_edge(static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1));
  }
  return g;
}

Multigraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return read_graph(in, path.string());
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << g.num_vertices() << '\n';
  for (const EdgeEntry& e : g.edge_list()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

}  // namespace mgraphon
