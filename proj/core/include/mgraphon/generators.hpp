#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mgraphon/multigraph.hpp"
#include "mgraphon/random.hpp"
#include "mgraphon/rational.hpp"

namespace mgraphon {

/// Prescribed degrees d_1..d_n; total() is the half-edge count l.
struct DegreeSequence {
  std::vector<std::uint64_t> d;

  std::size_t size() const { return d.size(); }
  std::uint64_t total() const;
  static DegreeSequence of(const Multigraph& g);
  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
};

/// Configuration model CM(d): uniform perfect matching of the l labelled
/// half-edges. Throws std::invalid_argument for odd l.
Multigraph sample_cm(const DegreeSequence& d, Rng& rng);

/// CM(d){G} = prod d_i! / ((l-1)!! prod_{i<j} x_ij! prod_i x_ii!!).
/// Throws std::invalid_argument when G's degrees differ from d.
Rational cm_prob(const Multigraph& g, const DegreeSequence& d);

/// Draws the next edge of the preferential-attachment rule on the current
/// graph: endpoint i with probability (d_i + theta)/(L + n theta), then j with
/// probability (d_j + theta + 1[j = i])/(L + 1 + n theta). O(1).
std::pair<Vertex, Vertex> sample_attachment_pair(const Multigraph& g, double theta, Rng& rng);

/// Vertex drawn with probability (d_i + theta)/(L + n theta). O(1).
Vertex sample_preferential_vertex(const Multigraph& g, double theta, Rng& rng);

/// Adds m edges by the growth rule to `start` (empty graph on n vertices by
/// default).
Multigraph grow(std::size_t n, double theta, std::uint64_t m, Rng& rng,
                std::optional<Multigraph> start = std::nullopt);

/// P[H_n(m) = G] = prod theta^{(d_i)} / (n theta)^{(2m)} (2m)!! /
/// (prod_{i<j} x_ij! prod_i x_ii!!).
Rational growth_graph_prob(const Multigraph& g, const Rational& theta);

/// P[D*_n(m) = d] = (2m)! / (n theta)^{(2m)} prod theta^{(d_i)} / d_i!.
/// Throws std::invalid_argument for an odd degree sum.
Rational growth_degree_prob(const DegreeSequence& d, const Rational& theta);

/// NB(theta, q) mass: (1-q)^theta q^r theta^{(r)} / r!.
double nb_pmf(std::uint64_t r, double theta, double q);

/// Success parameter q = 2m / (2m + n theta) of the degree representation.
inline double nb_success_param(std::size_t n, std::uint64_t m, double theta) {
  return 2.0 * static_cast<double>(m) / (2.0 * static_cast<double>(m) + static_cast<double>(n) * theta);
}

/// Law of n iid NB(theta, q) variables conditioned on summing to 2m, exact.
/// The q-dependent factor q^{2m} (1-q)^{n theta} is common to every atom and
/// cancels, which leaves weights prod theta^{(d_i)}/d_i!. Throws
/// std::length_error when more than `cap` sequences would be enumerated.
std::map<std::vector<std::uint64_t>, Rational> nb_conditional_degree_law(std::size_t n, std::uint64_t m,
                                                                         const Rational& theta,
                                                                         std::size_t cap = 1'000'000);

}  // namespace mgraphon
