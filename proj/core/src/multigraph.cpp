#include "mgraphon/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mgraphon {

namespace {

std::uint64_t pair_key(Vertex i, Vertex j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

}  // namespace

Multigraph::Multigraph(std::size_t n) : n_(n), dense_(n <= kDenseLimit), degrees_(n, 0) {
  if (n > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("Multigraph: too many vertices");
  if (dense_) dense_adj_.assign(n * n, 0);
}

Multigraph Multigraph::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  Multigraph g(n);
  for (auto [i, j] : edges) g.add_edge(i, j);
  return g;
}

void Multigraph::check_vertex(Vertex v) const {
  if (v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
}

std::uint32_t Multigraph::multiplicity(Vertex i, Vertex j) const {
  check_vertex(i);
  check_vertex(j);
  if (dense_) return dense_adj_[static_cast<std::size_t>(i) * n_ + j];
  auto it = sparse_adj_.find(pair_key(i, j));
  return it == sparse_adj_.end() ? 0 : it->second;
}

std::uint32_t& Multigraph::cell(Vertex i, Vertex j) {
  if (dense_) return dense_adj_[static_cast<std::size_t>(i) * n_ + j];
  return sparse_adj_[pair_key(i, j)];
}

// Applies delta edges between i and j (delta loops when i == j).
void Multigraph::bump(Vertex i, Vertex j, int delta) {
  if (i == j) {
    cell(i, i) += 2 * delta;
    degrees_[i] += 2 * delta;
    loops_ += delta;
  } else {
    cell(i, j) += delta;
    if (dense_) cell(j, i) += delta;
    degrees_[i] += delta;
    degrees_[j] += delta;
  }
  if (!dense_ && delta < 0) {
    auto it = sparse_adj_.find(pair_key(i, j));
    if (it != sparse_adj_.end() && it->second == 0) sparse_adj_.erase(it);
  }
}

Vertex Multigraph::half_edge_owner(std::uint64_t slot) const {
  if (slot >= half_edge_count()) throw std::out_of_range("half-edge slot out of range");
  const EdgeEntry& e = edges_[slot / 2];
  return (slot & 1) ? e.v : e.u;
}

void Multigraph::add_edge(Vertex i, Vertex j) {
  check_vertex(i);
  check_vertex(j);
  edges_.push_back({i, j});
  bump(i, j, +1);
}

void Multigraph::remove_entry(std::size_t index) {
  if (index >= edges_.size()) throw std::out_of_range("edge-list index out of range");
  const EdgeEntry e = edges_[index];
  bump(e.u, e.v, -1);
  edges_[index] = edges_.back();
  edges_.pop_back();
}

void Multigraph::move_half_edge(std::size_t index, int which, Vertex new_vertex) {
  if (index >= edges_.size()) throw std::out_of_range("edge-list index out of range");
  if (which != 0 && which != 1) throw std::out_of_range("endpoint must be 0 or 1");
  check_vertex(new_vertex);
  EdgeEntry& e = edges_[index];
  bump(e.u, e.v, -1);
  (which == 0 ? e.u : e.v) = new_vertex;
  bump(e.u, e.v, +1);
}

std::uint32_t Multigraph::max_edge_multiplicity() const {
  std::uint32_t best = 0;
  for (const EdgeEntry& e : edges_)
    if (!e.is_loop()) best = std::max(best, multiplicity(e.u, e.v));
  return best;
}

std::uint32_t Multigraph::max_loop_count() const {
  std::uint32_t best = 0;
  for (const EdgeEntry& e : edges_)
    if (e.is_loop()) best = std::max(best, multiplicity(e.u, e.u) / 2);
  return best;
}

bool Multigraph::check_invariants() const {
  Multigraph rebuilt(n_);
  for (const EdgeEntry& e : edges_) {
    if (e.u >= n_ || e.v >= n_) return false;
    rebuilt.add_edge(e.u, e.v);
  }
  std::uint64_t degree_sum = 0;
  for (Vertex i = 0; i < n_; ++i) {
    std::uint64_t row = 0;
    for (Vertex j = 0; j < n_; ++j) {
      const std::uint32_t z = multiplicity(i, j);
      if (z != multiplicity(j, i)) return false;
      if (z != rebuilt.multiplicity(i, j)) return false;
      row += z;
    }
    if (multiplicity(i, i) % 2 != 0) return false;
    if (row != degrees_[i]) return false;
    degree_sum += row;
  }
  return degree_sum == half_edge_count() && loops_ == rebuilt.loops_;
}

Multigraph Multigraph::erased() const {
  Multigraph out(n_);
  for (Vertex i = 0; i < n_; ++i)
    for (Vertex j = i + 1; j < n_; ++j)
      if (multiplicity(i, j) >= 1) out.add_edge(i, j);
  return out;
}

Multigraph Multigraph::relabeled(std::span<const Vertex> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
  Multigraph out(n_);
  for (const EdgeEntry& e : edges_) out.add_edge(perm[e.u], perm[e.v]);
  return out;
}

std::vector<std::uint32_t> Multigraph::canonical_key() const {
  std::vector<std::uint32_t> key;
  key.reserve(1 + n_ * (n_ + 1) / 2);
  key.push_back(static_cast<std::uint32_t>(n_));
  for (Vertex i = 0; i < n_; ++i)
    for (Vertex j = i; j < n_; ++j) key.push_back(multiplicity(i, j));
  return key;
}

Multigraph Multigraph::from_canonical_key(std::span<const std::uint32_t> key) {
  if (key.empty()) throw std::invalid_argument("empty canonical key");
  const std::size_t n = key[0];
  if (key.size() != 1 + n * (n + 1) / 2) throw std::invalid_argument("canonical key has wrong length");
  Multigraph g(n);
  std::size_t pos = 1;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i; j < n; ++j) {
      const std::uint32_t z = key[pos++];
      if (i == j && z % 2 != 0) throw std::invalid_argument("odd diagonal in canonical key");
      const std::uint32_t count = i == j ? z / 2 : z;
      for (std::uint32_t c = 0; c < count; ++c) g.add_edge(i, j);
    }
  return g;
}

bool operator==(const Multigraph& a, const Multigraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (const EdgeEntry& e : a.edges_)
    if (a.multiplicity(e.u, e.v) != b.multiplicity(e.u, e.v)) return false;
  for (const EdgeEntry& e : b.edges_)
    if (a.multiplicity(e.u, e.v) != b.multiplicity(e.u, e.v)) return false;
  return true;
}

}  // namespace mgraphon
