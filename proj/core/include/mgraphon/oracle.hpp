#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mgraphon/density.hpp"
#include "mgraphon/multigraph.hpp"
#include "mgraphon/pattern.hpp"
#include "mgraphon/rational.hpp"

// Brute-force ground truth for tiny instances. Everything here is written
// independently of the samplers and closed forms it is used to check.
namespace mgraphon::oracle {

using GraphKey = std::vector<std::uint32_t>;  // Multigraph::canonical_key
using ExactLaw = std::map<GraphKey, Rational>;

inline constexpr std::size_t kDefaultCap = 1'000'000;

Rational total_mass(const ExactLaw& law);

/// All multigraphs with degree sequence d (loops counted twice).
std::vector<Multigraph> enumerate_graphs_by_degrees(const std::vector<std::uint64_t>& d,
                                                    std::size_t cap = kDefaultCap);
/// All multigraphs on n vertices with exactly m edges + loops.
std::vector<Multigraph> enumerate_graphs_by_edges(std::size_t n, std::uint64_t m, std::size_t cap = kDefaultCap);

/// Law of H_n(m) by a forward pass over the pair law
/// P(i, j) = 2 (d_i + theta)(d_j + theta) / ((L + n theta)(L + n theta + 1)),
/// P(i, i) = (d_i + theta)(d_i + theta + 1) / (...).
ExactLaw exact_growth_law(std::size_t n, std::uint64_t m, const Rational& theta, std::size_t cap = kDefaultCap);

/// Law of the configuration model from a uniform matching of half-edges,
/// computed by pairing the lowest free half-edge with every other one.
ExactLaw exact_cm_law(const std::vector<std::uint64_t>& d, std::size_t cap = kDefaultCap);

struct ReconnectOracleParams {
  std::size_t n = 2;
  Rational theta{1};
  Rational p1{1, 2};
  Rational p2{1, 2};
  Rational a{1, 2};
  Rational rho0{1, 2};
};

struct ReconnectLaw {
  ExactLaw law;          // over graphs; L is determined by the graph
  Rational escaped{0};   // mass of paths that left L <= L_cap
};

/// Exact m-step law of the reconnection chain started from H_n(L(0)/2).
/// Mass stepping above L_cap is dropped and reported. Throws
/// std::length_error when the number of states exceeds `state_cap`.
ReconnectLaw exact_reconnect_law(const ReconnectOracleParams& params, std::uint64_t m, std::uint64_t L_cap,
                                 std::size_t state_cap = kDefaultCap);

/// Atoms with half-edge count L, renormalised. Empty when L carries no mass.
ExactLaw conditional_slice(const ExactLaw& law, std::uint64_t L);
/// Marginal law of L.
std::map<std::uint64_t, Rational> half_edge_marginal(const ExactLaw& law);

Rational tv_distance(const ExactLaw& p, const ExactLaw& q);
/// Empirical histogram against an exact law, in doubles.
double tv_distance(const std::map<GraphKey, std::size_t>& counts, const ExactLaw& q);

/// Direct count over all n^k maps with a base-n counter. Throws
/// std::length_error when n^k exceeds `cap`.
Rational naive_density(const Pattern& f, const Multigraph& g, DensityKind kind, std::uint64_t cap = 10'000'000);

nlohmann::json to_json(const ExactLaw& law);

}  // namespace mgraphon::oracle
