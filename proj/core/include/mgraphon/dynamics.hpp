#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mgraphon/estimate.hpp"
#include "mgraphon/multigraph.hpp"
#include "mgraphon/pattern.hpp"
#include "mgraphon/random.hpp"

namespace mgraphon {

struct ReconnectParams {
  std::size_t n = 0;
  double theta = 1.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double a = 0.0;
  double rho0 = 0.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless theta > 0, p1, p2 in [0, 1],
  /// p1 + p2 <= 1 and 0 < a <= rho0.
  void validate() const;
  /// a n^2 + 1; Step II is only possible strictly above it.
  double threshold() const;
  /// 2 floor(rho0 n^2 / 2).
  std::uint64_t initial_half_edges() const;
};

struct ReconnectState {
  Multigraph graph;
  std::uint64_t m = 0;  // steps taken

  std::uint64_t L() const { return graph.half_edge_count(); }
};

enum class StepKind { add, remove, move };

/// G_n(0) ~ H_n(L_n(0)/2) via the growth sampler.
ReconnectState init_state(const ReconnectParams& params, Rng& rng);

/// One transition. Above the threshold: add / remove / move with p1 / p2 /
/// 1 - p1 - p2; at or below it: add with p1 + p2, move otherwise.
StepKind step(ReconnectState& state, const ReconnectParams& params, Rng& rng);

/// Half-edge move: uniform slot j, its partner j' is re-attached to a vertex
/// drawn with probability (d_i + theta)/(L + n theta), degrees taken before
/// j' is detached.
void move_step(Multigraph& g, double theta, Rng& rng);

/// floor(n^4 s / p1). Requires n <= 255, 0 <= s <= 1000 and p1 > 0.
std::uint64_t step_index(std::size_t n, double p1, double s);

struct ObserveOptions {
  std::vector<Pattern> patterns;
  std::size_t n_samples = 1000;  // per density when not exact
  std::uint64_t exact_budget = 1'000'000;
  bool inj = false;     // also record t^inj
  bool erased = false;  // also record t^ind of the erased simple graph
};

struct Observation {
  double s = 0.0;
  std::uint64_t m = 0;
  std::uint64_t L = 0;
  double Y = 0.0;  // L / n^2
  std::vector<Estimate> ind;
  std::vector<Estimate> inj;
  std::vector<Estimate> erased_ind;
};

struct Trajectory {
  std::vector<Observation> records;
};

/// Runs the chain from init_state to each m(s_q) in turn and observes it.
/// Densities use a separate stream so that the chain path does not depend on
/// what is observed. Throws std::invalid_argument when times are unsorted or
/// p1 = 0 with nonempty times.
Trajectory run_and_observe(const ReconnectParams& params, std::span<const double> times,
                           const ObserveOptions& options, Rng& chain_rng, Rng& observe_rng);

/// L-chain only: the half-edge count evolves by the step-kind rule alone,
/// without graph structure. Returns L at each requested step index.
std::vector<std::uint64_t> simulate_half_edge_chain(const ReconnectParams& params,
                                                     std::span<const std::uint64_t> steps, Rng& rng);

/// Reflected-walk representation a n^2 + |2 S(m) + L(0) - a n^2| with S a lazy
/// +-1 walk, P(+1) = P(-1) = p1. Increments between requested step indices
/// are drawn in O(1) from binomials. Returns Y = L / n^2 at each index.
std::vector<double> reflected_walk_path(const ReconnectParams& params, std::span<const std::uint64_t> steps,
                                        Rng& rng);

struct SliceReport {
  std::uint64_t L = 0;
  std::size_t draws = 0;
  double tv = 0.0;  // to H_n(L/2)
};

struct ConditionalCheckReport {
  std::vector<SliceReport> slices;  // ascending L
  double max_tv = 0.0;
};

/// Runs `n_draws` independent chains for m steps, buckets the final graph by
/// L and compares every bucket's empirical law with growth_graph_prob.
/// Draw b uses stream (seed, b / 4096), so results do not depend on
/// `workers`. Throws std::length_error when more than `max_atoms` distinct
/// graphs appear.
ConditionalCheckReport conditional_cm_check(const ReconnectParams& params, std::uint64_t m, std::size_t n_draws,
                                            std::size_t workers = 1, std::size_t max_atoms = 1'000'000);

}  // namespace mgraphon
