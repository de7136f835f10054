#include "mgraphon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "mgraphon/density.hpp"
#include "mgraphon/generators.hpp"
#include "mgraphon/parallel.hpp"

namespace mgraphon {

void ReconnectParams::validate() const {
  if (n == 0) throw std::invalid_argument("ReconnectParams: n must be positive");
  if (!(theta > 0.0)) throw std::invalid_argument("ReconnectParams: theta must be positive");
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
    throw std::invalid_argument("ReconnectParams: p1, p2 must lie in [0, 1]");
  if (p1 + p2 > 1.0) throw std::invalid_argument("ReconnectParams: p1 + p2 must not exceed 1");
  if (!(a > 0.0)) throw std::invalid_argument("ReconnectParams: a must be positive");
  if (!(rho0 >= a)) throw std::invalid_argument("ReconnectParams: rho0 must be at least a");
}

double ReconnectParams::threshold() const {
  const double nn = static_cast<double>(n);
  return a * nn * nn + 1.0;
}

std::uint64_t ReconnectParams::initial_half_edges() const {
  const double nn = static_cast<double>(n);
  return 2 * static_cast<std::uint64_t>(std::floor(rho0 * nn * nn / 2.0));
}

ReconnectState init_state(const ReconnectParams& params, Rng& rng) {
  params.validate();
  return ReconnectState{grow(params.n, params.theta, params.initial_half_edges() / 2, rng), 0};
}

void move_step(Multigraph& g, double theta, Rng& rng) {
  const std::uint64_t L = g.half_edge_count();
  if (L == 0) return;
  const std::uint64_t j = uniform_index(rng, L);
  const std::uint64_t partner = j ^ 1U;
  // Drawn before detaching, so j' itself still counts toward its owner.
  const Vertex target = sample_preferential_vertex(g, theta, rng);
  g.move_half_edge(partner >> 1U, static_cast<int>(partner & 1U), target);
}

StepKind step(ReconnectState& state, const ReconnectParams& params, Rng& rng) {
  Multigraph& g = state.graph;
  const double u = uniform01(rng);
  StepKind kind;
  if (static_cast<double>(g.half_edge_count()) > params.threshold()) {
    kind = u < params.p1 ? StepKind::add : (u < params.p1 + params.p2 ? StepKind::remove : StepKind::move);
  } else {
    kind = u < params.p1 + params.p2 ? StepKind::add : StepKind::move;
  }
  switch (kind) {
    case StepKind::add: {
      auto [i, j] = sample_attachment_pair(g, params.theta, rng);
      g.add_edge(i, j);
      break;
    }
    case StepKind::remove:
      g.remove_entry(uniform_index(rng, g.num_entries()));
      break;
    case StepKind::move:
      move_step(g, params.theta, rng);
      break;
  }
  ++state.m;
  return kind;
}

std::uint64_t step_index(std::size_t n, double p1, double s) {
  if (n > 255) throw std::invalid_argument("step_index: n must be at most 255");
  if (!(p1 > 0.0)) throw std::invalid_argument("step_index: p1 must be positive");
  if (!(s >= 0.0 && s <= 1000.0)) throw std::invalid_argument("step_index: s must lie in [0, 1000]");
  const auto n4 = static_cast<std::uint64_t>(n) * n * n * n;  // < 2^32
  const long double v = std::floor(static_cast<long double>(n4) * static_cast<long double>(s) /
                                   static_cast<long double>(p1));
  if (v >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
    throw std::overflow_error("step_index: step count overflows");
  return static_cast<std::uint64_t>(v);
}

namespace {

std::vector<std::uint64_t> step_indices(const ReconnectParams& params, std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end())) throw std::invalid_argument("times must be sorted");
  if (!times.empty() && !(params.p1 > 0.0))
    throw std::invalid_argument("p1 = 0 leaves the time scale undefined");
  std::vector<std::uint64_t> steps;
  steps.reserve(times.size());
  for (double s : times) steps.push_back(step_index(params.n, params.p1, s));
  return steps;
}

}  // namespace

Trajectory run_and_observe(const ReconnectParams& params, std::span<const double> times,
                           const ObserveOptions& options, Rng& chain_rng, Rng& observe_rng) {
  params.validate();
  const auto steps = step_indices(params, times);
  if (options.n_samples == 0) throw std::invalid_argument("run_and_observe: n_samples must be positive");
  ReconnectState state = init_state(params, chain_rng);
  const double n2 = static_cast<double>(params.n) * static_cast<double>(params.n);
  Trajectory out;
  out.records.reserve(times.size());
  for (std::size_t q = 0; q < times.size(); ++q) {
    while (state.m < steps[q]) step(state, params, chain_rng);
    Observation obs;
    obs.s = times[q];
    obs.m = state.m;
    obs.L = state.L();
    obs.Y = static_cast<double>(obs.L) / n2;
    const std::optional<Multigraph> erased =
        options.erased ? std::optional<Multigraph>(state.graph.erased()) : std::nullopt;
    for (const Pattern& f : options.patterns) {
      const bool fits = f.num_vertices() <= params.n;
      auto measure = [&](const Multigraph& g, DensityKind kind) {
        // k > n: no injections, density 0 by convention.
        if (!fits) return Estimate::exact(0.0);
        return density_estimate(f, g, kind, options.n_samples, options.exact_budget, observe_rng);
      };
      obs.ind.push_back(measure(state.graph, DensityKind::ind));
      if (options.inj) obs.inj.push_back(measure(state.graph, DensityKind::inj));
      if (erased) obs.erased_ind.push_back(measure(*erased, DensityKind::ind));
    }
    out.records.push_back(std::move(obs));
  }
  return out;
}

std::vector<std::uint64_t> simulate_half_edge_chain(const ReconnectParams& params,
                                                     std::span<const std::uint64_t> steps, Rng& rng) {
  params.validate();
  if (!std::is_sorted(steps.begin(), steps.end())) throw std::invalid_argument("steps must be sorted");
  const double threshold = params.threshold();
  std::uint64_t L = params.initial_half_edges();
  std::uint64_t m = 0;
  std::vector<std::uint64_t> out;
  out.reserve(steps.size());
  for (std::uint64_t target : steps) {
    for (; m < target; ++m) {
      const double u = uniform01(rng);
      if (static_cast<double>(L) > threshold) {
        if (u < params.p1)
          L += 2;
        else if (u < params.p1 + params.p2)
          L -= 2;
      } else if (u < params.p1 + params.p2) {
        L += 2;
      }
    }
    out.push_back(L);
  }
  return out;
}

std::vector<double> reflected_walk_path(const ReconnectParams& params, std::span<const std::uint64_t> steps,
                                        Rng& rng) {
  params.validate();
  if (!std::is_sorted(steps.begin(), steps.end())) throw std::invalid_argument("steps must be sorted");
  if (2.0 * params.p1 > 1.0) throw std::invalid_argument("reflected_walk_path: requires p1 <= 1/2");
  const double n2 = static_cast<double>(params.n) * static_cast<double>(params.n);
  const double an2 = params.a * n2;
  const double L0 = static_cast<double>(params.initial_half_edges());
  std::int64_t S = 0;
  std::uint64_t m = 0;
  std::vector<double> out;
  out.reserve(steps.size());
  for (std::uint64_t target : steps) {
    const std::uint64_t gap = target - m;
    if (gap > 0) {
      const auto moves = std::binomial_distribution<std::uint64_t>(gap, 2.0 * params.p1)(rng);
      const auto ups = moves > 0 ? std::binomial_distribution<std::uint64_t>(moves, 0.5)(rng) : 0;
      S += 2 * static_cast<std::int64_t>(ups) - static_cast<std::int64_t>(moves);
    }
    m = target;
    const double L = an2 + std::abs(2.0 * static_cast<double>(S) + L0 - an2);
    out.push_back(L / n2);
  }
  return out;
}

ConditionalCheckReport conditional_cm_check(const ReconnectParams& params, std::uint64_t m, std::size_t n_draws,
                                            std::size_t workers, std::size_t max_atoms) {
  params.validate();
  constexpr std::size_t kBlock = 4096;
  using Histogram = std::map<std::uint64_t, std::map<std::vector<std::uint32_t>, std::size_t>>;
  const std::size_t blocks = (n_draws + kBlock - 1) / kBlock;
  std::vector<Histogram> partial(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    Rng rng = derive_rng(params.seed, b);
    const std::size_t end = std::min(n_draws, (b + 1) * kBlock);
    for (std::size_t d = b * kBlock; d < end; ++d) {
      ReconnectState state = init_state(params, rng);
      while (state.m < m) step(state, params, rng);
      auto& bucket = partial[b][state.L()];
      ++bucket[state.graph.canonical_key()];
      if (bucket.size() > max_atoms) throw std::length_error("conditional_cm_check: atom cap exceeded");
    }
  });
  Histogram merged;
  for (const Histogram& h : partial)
    for (const auto& [L, counts] : h)
      for (const auto& [key, c] : counts) merged[L][key] += c;

  const Rational theta(params.theta);  // exact binary value of the double
  ConditionalCheckReport report;
  for (const auto& [L, counts] : merged) {
    std::size_t total = 0;
    for (const auto& kv : counts) total += kv.second;
    double seen_mass = 0.0;
    double diff = 0.0;
    for (const auto& [key, c] : counts) {
      const double p = to_double(growth_graph_prob(Multigraph::from_canonical_key(key), theta));
      seen_mass += p;
      diff += std::abs(static_cast<double>(c) / static_cast<double>(total) - p);
    }
    const double tv = 0.5 * (diff + std::max(0.0, 1.0 - seen_mass));
    report.slices.push_back({L, total, tv});
    report.max_tv = std::max(report.max_tv, tv);
  }
  return report;
}

}  // namespace mgraphon
