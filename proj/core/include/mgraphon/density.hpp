#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mgraphon/estimate.hpp"
#include "mgraphon/multigraph.hpp"
#include "mgraphon/pattern.hpp"
#include "mgraphon/random.hpp"
#include "mgraphon/rational.hpp"

namespace mgraphon {

enum class DensityKind { hom, inj, ind };

std::string to_string(DensityKind kind);

inline constexpr std::uint64_t kDefaultDensityBudget = 100'000'000;

/// Thrown when exact counting would visit more maps than the budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of maps counted by the exact functional: n^k for hom, (n)_k for
/// inj/ind (0 when k > n).
std::uint64_t map_space_size(std::size_t k, std::size_t n, DensityKind kind);

/// Number of maps sigma satisfying the kind's indicator.
std::uint64_t count_maps(const Pattern& f, const Multigraph& g, DensityKind kind,
                         std::uint64_t budget = kDefaultDensityBudget);

/// t_F(G), t^inj_F(G), t^ind_F(G) as exact rationals.
Rational density(const Pattern& f, const Multigraph& g, DensityKind kind,
                 std::uint64_t budget = kDefaultDensityBudget);
double density_value(const Pattern& f, const Multigraph& g, DensityKind kind,
                     std::uint64_t budget = kDefaultDensityBudget);

inline Rational hom_density(const Pattern& f, const Multigraph& g,
                            std::uint64_t budget = kDefaultDensityBudget) {
  return density(f, g, DensityKind::hom, budget);
}
inline Rational inj_density(const Pattern& f, const Multigraph& g,
                            std::uint64_t budget = kDefaultDensityBudget) {
  return density(f, g, DensityKind::inj, budget);
}
inline Rational ind_density(const Pattern& f, const Multigraph& g,
                            std::uint64_t budget = kDefaultDensityBudget) {
  return density(f, g, DensityKind::ind, budget);
}

/// Unbiased estimate from N uniform maps (hom) or uniform injections
/// (inj/ind). Requires N >= 1 and, for inj/ind, n >= k.
Estimate sampled_density(const Pattern& f, const Multigraph& g, DensityKind kind, std::size_t n_samples,
                         Rng& rng);

/// Exact when the map space fits the budget, sampled otherwise.
Estimate density_estimate(const Pattern& f, const Multigraph& g, DensityKind kind, std::size_t n_samples,
                          std::uint64_t exact_budget, Rng& rng);

struct DistanceOptions {
  std::size_t max_patterns = 64;         // I_max
  std::size_t max_pattern_vertices = 3;  // enumeration restricted to k <= this
  /// R_max for the two induced sums; negative means max multiplicity present + 1.
  int max_multiplicity = -1;
  std::uint64_t budget = kDefaultDensityBudget;
};

struct DistanceResult {
  double value = 0.0;
  double subgraph_part = 0.0;
  double edge_part = 0.0;
  double loop_part = 0.0;
  /// 2^{-I_max} plus the exact induced mass beyond R_max in both graphs.
  double truncation_bound = 0.0;
};

/// Truncated multisubgraph distance d_ms between two multigraphs.
DistanceResult ms_distance(const Multigraph& g1, const Multigraph& g2, const DistanceOptions& options = {});

}  // namespace mgraphon
