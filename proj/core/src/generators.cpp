#include "mgraphon/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mgraphon {

std::uint64_t DegreeSequence::total() const { return std::accumulate(d.begin(), d.end(), std::uint64_t{0}); }

DegreeSequence DegreeSequence::of(const Multigraph& g) {
  return DegreeSequence{std::vector<std::uint64_t>(g.degrees().begin(), g.degrees().end())};
}

Multigraph sample_cm(const DegreeSequence& d, Rng& rng) {
  const std::uint64_t total = d.total();
  if (total % 2 != 0) throw std::invalid_argument("sample_cm: degree sum must be even");
  std::vector<Vertex> half_edges;
  half_edges.reserve(total);
  for (std::size_t i = 0; i < d.size(); ++i) half_edges.insert(half_edges.end(), d.d[i], static_cast<Vertex>(i));
  std::shuffle(half_edges.begin(), half_edges.end(), rng);
  Multigraph g(d.size());
  for (std::size_t s = 0; s < half_edges.size(); s += 2) g.add_edge(half_edges[s], half_edges[s + 1]);
  return g;
}

namespace {

// prod_{i<j} x_ij! prod_i x_ii!!
BigInt multiplicity_weight(const Multigraph& g) {
  BigInt w = 1;
  const auto n = static_cast<Vertex>(g.num_vertices());
  for (Vertex i = 0; i < n; ++i) {
    w *= double_factorial(g.multiplicity(i, i));
    for (Vertex j = i + 1; j < n; ++j) w *= factorial(g.multiplicity(i, j));
  }
  return w;
}

}  // namespace

Rational cm_prob(const Multigraph& g, const DegreeSequence& d) {
  if (d.size() != g.num_vertices()) throw std::invalid_argument("cm_prob: vertex count mismatch");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (g.degree(static_cast<Vertex>(i)) != d.d[i]) throw std::invalid_argument("cm_prob: degree mismatch");
  const std::uint64_t total = d.total();
  BigInt num = 1;
  for (std::uint64_t di : d.d) num *= factorial(di);
  const BigInt den = double_factorial(static_cast<std::int64_t>(total) - 1) * multiplicity_weight(g);
  return Rational(num, den);
}

Vertex sample_preferential_vertex(const Multigraph& g, double theta, Rng& rng) {
  const std::uint64_t L = g.half_edge_count();
  const auto n = g.num_vertices();
  const double mass = static_cast<double>(L) + static_cast<double>(n) * theta;
  // Mixture: a uniform half-edge's owner, or a uniform vertex.
  if (L > 0 && uniform01(rng) * mass < static_cast<double>(L)) return g.half_edge_owner(uniform_index(rng, L));
  return static_cast<Vertex>(uniform_index(rng, n));
}

std::pair<Vertex, Vertex> sample_attachment_pair(const Multigraph& g, double theta, Rng& rng) {
  const Vertex i = sample_preferential_vertex(g, theta, rng);
  // Second endpoint sees the first half-edge as already attached to i.
  const std::uint64_t L = g.half_edge_count() + 1;
  const double mass = static_cast<double>(L) + static_cast<double>(g.num_vertices()) * theta;
  if (uniform01(rng) * mass < static_cast<double>(L)) {
    const std::uint64_t slot = uniform_index(rng, L);
    return {i, slot + 1 == L ? i : g.half_edge_owner(slot)};
  }
  return {i, static_cast<Vertex>(uniform_index(rng, g.num_vertices()))};
}

Multigraph grow(std::size_t n, double theta, std::uint64_t m, Rng& rng, std::optional<Multigraph> start) {
  if (!(theta > 0.0)) throw std::invalid_argument("grow: theta must be positive");
  Multigraph g = start ? std::move(*start) : Multigraph(n);
  if (g.num_vertices() != n) throw std::invalid_argument("grow: start graph has wrong vertex count");
  if (n == 0 && m > 0) throw std::invalid_argument("grow: no vertices");
  for (std::uint64_t t = 0; t < m; ++t) {
    auto [i, j] = sample_attachment_pair(g, theta, rng);
    g.add_edge(i, j);
  }
  return g;
}

Rational growth_graph_prob(const Multigraph& g, const Rational& theta) {
  const std::uint64_t two_m = g.half_edge_count();
  Rational p(1);
  for (std::uint64_t di : g.degrees()) p *= rising_factorial(theta, di);
  p /= rising_factorial(theta * static_cast<long long>(g.num_vertices()), two_m);
  p *= Rational(double_factorial(static_cast<std::int64_t>(two_m)), multiplicity_weight(g));
  return p;
}

Rational growth_degree_prob(const DegreeSequence& d, const Rational& theta) {
  const std::uint64_t two_m = d.total();
  if (two_m % 2 != 0) throw std::invalid_argument("growth_degree_prob: degree sum must be even");
  Rational p(factorial(two_m));
  p /= rising_factorial(theta * static_cast<long long>(d.size()), two_m);
  for (std::uint64_t di : d.d) p *= rising_factorial(theta, di) / Rational(factorial(di));
  return p;
}

double nb_pmf(std::uint64_t r, double theta, double q) {
  if (q == 0.0) return r == 0 ? 1.0 : 0.0;
  // theta^{(r)}/r! = Gamma(r + theta) / (Gamma(theta) r!)
  const double rd = static_cast<double>(r);
  const double log_p = theta * std::log1p(-q) + rd * std::log(q) + std::lgamma(rd + theta) - std::lgamma(theta) -
                       std::lgamma(rd + 1.0);
  return std::exp(log_p);
}

std::map<std::vector<std::uint64_t>, Rational> nb_conditional_degree_law(std::size_t n, std::uint64_t m,
                                                                         const Rational& theta,
                                                                         std::size_t cap) {
  if (n == 0) throw std::invalid_argument("nb_conditional_degree_law: n must be positive");
  std::map<std::vector<std::uint64_t>, Rational> law;
  std::vector<std::uint64_t> d(n, 0);
  Rational total(0);
  auto rec = [&](auto&& self, std::size_t idx, std::uint64_t left) -> void {
    if (idx + 1 == n) {
      d[idx] = left;
      if (law.size() >= cap) throw std::length_error("nb_conditional_degree_law: state-space cap exceeded");
      Rational w(1);
      for (std::uint64_t di : d) w *= rising_factorial(theta, di) / Rational(factorial(di));
      total += w;
      law.emplace(d, w);
      return;
    }
    for (std::uint64_t c = 0; c <= left; ++c) {
      d[idx] = c;
      self(self, idx + 1, left - c);
    }
  };
  rec(rec, 0, 2 * m);
  for (auto& [key, w] : law) w /= total;
  return law;
}

}  // namespace mgraphon
