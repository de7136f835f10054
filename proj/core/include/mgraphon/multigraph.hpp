#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mgraphon {

using Vertex = std::uint32_t;

/// One edge-list entry. A loop is stored as {v, v}. The entry at index e owns
/// half-edge slots 2e (endpoint u) and 2e+1 (endpoint v); the two slots of an
/// entry are matched to each other.
struct EdgeEntry {
  Vertex u;
  Vertex v;
  bool is_loop() const { return u == v; }
  friend bool operator==(const EdgeEntry&, const EdgeEntry&) = default;
};

/// Multigraph on vertices {0, ..., n-1}.
///
/// Keeps three mutually consistent views: the symmetric adjacency matrix
/// z (z_ij = edge multiplicity for i != j, z_ii = 2 x loop count), the degree
/// array (row sums of z), and an unordered edge list with one entry per edge
/// or loop. All mutations are O(1).
///
/// Adjacency is dense for n <= kDenseLimit and a hash map of pairs above.
class Multigraph {
 public:
  static constexpr std::size_t kDenseLimit = 2048;

  Multigraph() : Multigraph(0) {}
  explicit Multigraph(std::size_t n);

  static Multigraph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t num_vertices() const { return n_; }

  /// z_ij. Loops count twice on the diagonal.
  std::uint32_t multiplicity(Vertex i, Vertex j) const;

  std::uint64_t degree(Vertex i) const { return degrees_.at(i); }
  std::span<const std::uint64_t> degrees() const { return degrees_; }

  std::span<const EdgeEntry> edge_list() const { return edges_; }
  std::size_t num_entries() const { return edges_.size(); }

  /// L = sum of degrees = 2 |edge_list|.
  std::uint64_t half_edge_count() const { return 2 * static_cast<std::uint64_t>(edges_.size()); }

  /// e(G): non-loop edges.
  std::uint64_t num_edges() const { return edges_.size() - loops_; }
  /// l(G): loops.
  std::uint64_t num_loops() const { return loops_; }

  /// Owner vertex of half-edge slot s; the partner of s is s ^ 1.
  Vertex half_edge_owner(std::uint64_t slot) const;

  void add_edge(Vertex i, Vertex j);
  void add_loop(Vertex i) { add_edge(i, i); }

  /// Swap-with-last deletion; edge_list order carries no meaning.
  void remove_entry(std::size_t index);

  /// Re-attaches endpoint `which` (0 = u, 1 = v) of entry `index` to
  /// `new_vertex`. The entry stays paired.
  void move_half_edge(std::size_t index, int which, Vertex new_vertex);

  /// Largest off-diagonal multiplicity and largest loop count present.
  std::uint32_t max_edge_multiplicity() const;
  std::uint32_t max_loop_count() const;

  /// Rebuilds adjacency and degrees from the edge list and compares with the
  /// incremental state. Also checks symmetry and even diagonals.
  bool check_invariants() const;

  /// Simple graph: single edge wherever z_ij >= 1 off the diagonal, no loops.
  Multigraph erased() const;

  /// Graph with vertex i renamed to perm[i].
  Multigraph relabeled(std::span<const Vertex> perm) const;

  /// Upper-triangular adjacency (row-major, i <= j) prefixed by n. Equal keys
  /// iff equal labelled multigraphs.
  std::vector<std::uint32_t> canonical_key() const;
  static Multigraph from_canonical_key(std::span<const std::uint32_t> key);

  /// Same n and same adjacency; edge-list order is ignored.
  friend bool operator==(const Multigraph& a, const Multigraph& b);

 private:
  std::uint32_t& cell(Vertex i, Vertex j);
  void bump(Vertex i, Vertex j, int delta);
  void check_vertex(Vertex v) const;

  std::size_t n_;
  bool dense_;
  std::vector<std::uint32_t> dense_adj_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_adj_;
  std::vector<std::uint64_t> degrees_;
  std::vector<EdgeEntry> edges_;
  std::uint64_t loops_ = 0;
};

}  // namespace mgraphon
