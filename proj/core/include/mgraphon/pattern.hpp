#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mgraphon {

/// Small multigraph F = (a_ij) on k vertices used as a density probe.
/// Same conventions as Multigraph: symmetric, a_ii = 2 x loops.
class Pattern {
 public:
  Pattern() = default;
  /// Row-major k x k matrix; throws std::invalid_argument unless symmetric,
  /// non-negative and even on the diagonal.
  Pattern(std::size_t k, std::vector<std::uint32_t> adjacency);

  static Pattern empty(std::size_t k);
  /// K_{2,r}: two vertices joined by r parallel edges.
  static Pattern edge_bundle(std::uint32_t r);
  /// L_r: one vertex carrying r loops (a_11 = 2r).
  static Pattern loops(std::uint32_t r);
  /// Upper-triangular entries (i <= j, row-major), diagonal given as a_ii.
  static Pattern from_upper(std::size_t k, const std::vector<std::uint32_t>& upper);

  /// Accepts "K2_r", "L_r", "empty_k", "triangle", "path3", or
  /// "adj:k:a11,a12,...,akk" (upper triangle, diagonal as a_ii).
  static Pattern parse(std::string_view text);

  std::size_t num_vertices() const { return k_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }

  std::uint64_t num_edges() const;
  std::uint64_t num_loops() const;
  std::uint64_t total_multiplicity() const { return num_edges() + num_loops(); }
  bool is_simple() const;

  std::vector<std::uint32_t> upper_triangle() const;
  /// Pattern with vertex i renamed to perm[i].
  Pattern relabeled(const std::vector<std::size_t>& perm) const;

  std::string name() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<std::uint32_t> a_;
};

/// Deterministic enumeration F*_1, F*_2, ... of all multigraphs with at least
/// one vertex: ordered by size k + e(F) + l(F), then k, then lexicographic
/// upper-triangular adjacency. No isomorphism reduction.
class PatternEnumerator {
 public:
  /// Restricts the enumeration to patterns with at most max_vertices vertices
  /// (0 = unrestricted).
  explicit PatternEnumerator(std::size_t max_vertices = 0);

  Pattern next();

 private:
  void refill();

  std::size_t max_vertices_;
  std::size_t size_ = 0;
  std::vector<Pattern> buffer_;
  std::size_t pos_ = 0;
};

std::vector<Pattern> first_patterns(std::size_t count, std::size_t max_vertices = 0);

}  // namespace mgraphon
