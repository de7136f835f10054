#include "mgraphon/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mgraphon {

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::hom: return "hom";
    case DensityKind::inj: return "inj";
    case DensityKind::ind: return "ind";
  }
  return "?";
}

std::uint64_t map_space_size(std::size_t k, std::size_t n, DensityKind kind) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (kind != DensityKind::hom && k > n) return 0;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t factor = kind == DensityKind::hom ? n : n - i;
    if (factor != 0 && total > kMax / factor) return kMax;
    total *= factor;
  }
  return total;
}

namespace {

struct Counter {
  const Pattern& f;
  const Multigraph& g;
  DensityKind kind;
  std::vector<Vertex> assign;
  std::vector<bool> used;
  std::uint64_t count = 0;

  bool fits(std::uint32_t a, std::uint32_t z) const { return kind == DensityKind::ind ? a == z : a <= z; }

  void visit(std::size_t depth) {
    const std::size_t k = f.num_vertices();
    if (depth == k) {
      ++count;
      return;
    }
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex v = 0; v < n; ++v) {
      if (kind != DensityKind::hom && used[v]) continue;
      bool ok = fits(f.at(depth, depth), g.multiplicity(v, v));
      for (std::size_t j = 0; ok && j < depth; ++j) ok = fits(f.at(j, depth), g.multiplicity(assign[j], v));
      if (!ok) continue;
      assign[depth] = v;
      used[v] = true;
      visit(depth + 1);
      used[v] = false;
    }
  }
};

}  // namespace

std::uint64_t count_maps(const Pattern& f, const Multigraph& g, DensityKind kind, std::uint64_t budget) {
  const std::size_t k = f.num_vertices();
  const std::size_t n = g.num_vertices();
  if (kind != DensityKind::hom && k > n) return 0;
  const std::uint64_t space = map_space_size(k, n, kind);
  if (space > budget)
    throw BudgetExceeded("exact " + to_string(kind) + " density needs " + std::to_string(space) +
                         " maps, budget is " + std::to_string(budget));
  Counter c{f, g, kind, std::vector<Vertex>(k, 0), std::vector<bool>(n, false)};
  c.visit(0);
  return c.count;
}

Rational density(const Pattern& f, const Multigraph& g, DensityKind kind, std::uint64_t budget) {
  const std::uint64_t space = map_space_size(f.num_vertices(), g.num_vertices(), kind);
  if (space == 0) return Rational(0);
  const std::uint64_t hits = count_maps(f, g, kind, budget);
  return Rational(BigInt(hits), BigInt(space));
}

double density_value(const Pattern& f, const Multigraph& g, DensityKind kind, std::uint64_t budget) {
  const std::uint64_t space = map_space_size(f.num_vertices(), g.num_vertices(), kind);
  if (space == 0) return 0.0;
  return static_cast<double>(count_maps(f, g, kind, budget)) / static_cast<double>(space);
}

Estimate sampled_density(const Pattern& f, const Multigraph& g, DensityKind kind, std::size_t n_samples,
                         Rng& rng) {
  const std::size_t k = f.num_vertices();
  const std::size_t n = g.num_vertices();
  if (n_samples == 0) throw std::invalid_argument("sampled_density: need at least one sample");
  if (n == 0 && k > 0) throw std::invalid_argument("sampled_density: empty graph");
  if (kind != DensityKind::hom && k > n) throw std::invalid_argument("sampled_density: pattern larger than graph");
  std::vector<Vertex> sigma(k);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      for (;;) {
        sigma[i] = static_cast<Vertex>(uniform_index(rng, n));
        if (kind == DensityKind::hom) break;
        if (std::find(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(i), sigma[i]) ==
            sigma.begin() + static_cast<std::ptrdiff_t>(i))
          break;
      }
    }
    bool ok = true;
    for (std::size_t i = 0; ok && i < k; ++i)
      for (std::size_t j = i; ok && j < k; ++j) {
        const std::uint32_t a = f.at(i, j);
        const std::uint32_t z = g.multiplicity(sigma[i], sigma[j]);
        ok = kind == DensityKind::ind ? a == z : a <= z;
      }
    if (ok) ++hits;
  }
  return Estimate::from_indicators(hits, n_samples);
}

Estimate density_estimate(const Pattern& f, const Multigraph& g, DensityKind kind, std::size_t n_samples,
                          std::uint64_t exact_budget, Rng& rng) {
  const std::uint64_t space = map_space_size(f.num_vertices(), g.num_vertices(), kind);
  if (space <= exact_budget) return Estimate::exact(density_value(f, g, kind, exact_budget));
  return sampled_density(f, g, kind, n_samples, rng);
}

namespace {

// t^ind of K_{2,r} and L_r for every r present, as exact fractions of
// unordered distinct pairs and of vertices. K_{2,r} has a_11 = a_22 = 0, so a
// pair only counts when neither endpoint carries a loop.
struct InducedProfile {
  std::map<std::uint32_t, std::uint64_t> pairs;  // multiplicity -> unordered pair count
  std::map<std::uint32_t, std::uint64_t> loops;  // loop count -> vertex count
  std::uint64_t pair_total = 0;
  std::uint64_t vertex_total = 0;

  explicit InducedProfile(const Multigraph& g) {
    const auto n = static_cast<Vertex>(g.num_vertices());
    vertex_total = n;
    pair_total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    for (Vertex i = 0; i < n; ++i) {
      ++loops[g.multiplicity(i, i) / 2];
      if (g.multiplicity(i, i) != 0) continue;
      for (Vertex j = i + 1; j < n; ++j)
        if (g.multiplicity(j, j) == 0) ++pairs[g.multiplicity(i, j)];
    }
  }

  static Rational share(const std::map<std::uint32_t, std::uint64_t>& hist, std::uint64_t total,
                        std::uint32_t r) {
    if (total == 0) return Rational(0);
    auto it = hist.find(r);
    return it == hist.end() ? Rational(0) : Rational(BigInt(it->second), BigInt(total));
  }

  static Rational beyond(const std::map<std::uint32_t, std::uint64_t>& hist, std::uint64_t total,
                         std::uint32_t r) {
    if (total == 0) return Rational(0);
    std::uint64_t c = 0;
    for (auto it = hist.upper_bound(r); it != hist.end(); ++it) c += it->second;
    return Rational(BigInt(c), BigInt(total));
  }
};

}  // namespace

DistanceResult ms_distance(const Multigraph& g1, const Multigraph& g2, const DistanceOptions& options) {
  DistanceResult out;
  const auto patterns = first_patterns(options.max_patterns, options.max_pattern_vertices);
  Rational weight(1);
  Rational subgraph(0);
  for (const Pattern& f : patterns) {
    weight /= 2;
    Rational diff = hom_density(f, g1, options.budget) - hom_density(f, g2, options.budget);
    subgraph += weight * abs(diff);
  }

  const InducedProfile p1(g1), p2(g2);
  const std::uint32_t r_edges =
      options.max_multiplicity >= 0 ? static_cast<std::uint32_t>(options.max_multiplicity)
                                    : std::max(g1.max_edge_multiplicity(), g2.max_edge_multiplicity()) + 1;
  const std::uint32_t r_loops = options.max_multiplicity >= 0
                                    ? static_cast<std::uint32_t>(options.max_multiplicity)
                                    : std::max(g1.max_loop_count(), g2.max_loop_count()) + 1;
  Rational edge(0), loop(0);
  for (std::uint32_t r = 0; r <= r_edges; ++r)
    edge += abs(InducedProfile::share(p1.pairs, p1.pair_total, r) - InducedProfile::share(p2.pairs, p2.pair_total, r));
  for (std::uint32_t r = 0; r <= r_loops; ++r)
    loop += abs(InducedProfile::share(p1.loops, p1.vertex_total, r) -
                InducedProfile::share(p2.loops, p2.vertex_total, r));

  const Rational tail = weight + InducedProfile::beyond(p1.pairs, p1.pair_total, r_edges) +
                        InducedProfile::beyond(p2.pairs, p2.pair_total, r_edges) +
                        InducedProfile::beyond(p1.loops, p1.vertex_total, r_loops) +
                        InducedProfile::beyond(p2.loops, p2.vertex_total, r_loops);

  out.subgraph_part = to_double(subgraph);
  out.edge_part = to_double(edge);
  out.loop_part = to_double(loop);
  out.value = to_double(subgraph + edge + loop);
  out.truncation_bound = to_double(tail);
  return out;
}

}  // namespace mgraphon
