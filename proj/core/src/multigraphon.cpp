#include "mgraphon/multigraphon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgraphon {

double Multigraphon::tail(std::uint32_t r, double x, double y) const {
  double below = 0.0;
  for (std::uint32_t s = 0; s < r; ++s) below += eval(s, x, y);
  return std::clamp(1.0 - below, 0.0, 1.0);
}

StepMultigraphon::StepMultigraphon(Multigraph g) : g_(std::move(g)) {
  if (g_.num_vertices() == 0) throw std::invalid_argument("StepMultigraphon: empty graph");
  for (const EdgeEntry& e : g_.edge_list()) max_entry_ = std::max(max_entry_, g_.multiplicity(e.u, e.v));
}

Vertex StepMultigraphon::block(double x) const {
  const auto n = static_cast<double>(g_.num_vertices());
  const double c = std::ceil(n * x) - 1.0;
  return static_cast<Vertex>(std::clamp(c, 0.0, n - 1.0));
}

double StepMultigraphon::eval(std::uint32_t r, double x, double y) const {
  return g_.multiplicity(block(x), block(y)) == r ? 1.0 : 0.0;
}

double StepMultigraphon::tail(std::uint32_t r, double x, double y) const {
  return g_.multiplicity(block(x), block(y)) >= r ? 1.0 : 0.0;
}

double TruncatedMultigraphon::eval(std::uint32_t r, double x, double y) const {
  if (x == y) return r == 0 ? 1.0 : 0.0;
  if (r == 0) return h_->eval(0, x, y);
  if (r == 1) return h_->tail(1, x, y);
  return 0.0;
}

UniformBlock::UniformBlock(std::size_t n_samples, std::size_t width, Rng& rng)
    : n_(n_samples), width_(width), values_(n_samples * width) {
  if (n_samples == 0) throw std::invalid_argument("UniformBlock: need at least one sample");
  for (double& v : values_) v = uniform01(rng);
}

std::vector<double> density_terms(const Multigraphon& h, const Pattern& f, DensityKind kind,
                                  const UniformBlock& block) {
  const std::size_t k = f.num_vertices();
  if (block.width() < k) throw std::invalid_argument("density_terms: uniform block narrower than pattern");
  if (kind == DensityKind::inj) throw std::invalid_argument("density_terms: use hom for graphons");
  std::vector<double> terms(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    const double* u = block.row(s);
    double prod = 1.0;
    for (std::size_t i = 0; i < k && prod != 0.0; ++i)
      for (std::size_t j = i; j < k && prod != 0.0; ++j) {
        const std::uint32_t a = f.at(i, j);
        prod *= kind == DensityKind::hom ? h.tail(a, u[i], u[j]) : h.eval(a, u[i], u[j]);
      }
    terms[s] = prod;
  }
  return terms;
}

Estimate density_mc(const Multigraphon& h, const Pattern& f, DensityKind kind, const UniformBlock& block) {
  const auto terms = density_terms(h, f, kind, block);
  return Estimate::from_samples(terms);
}

Estimate hom_density_mc(const Multigraphon& h, const Pattern& f, std::size_t n_samples, Rng& rng) {
  UniformBlock block(n_samples, f.num_vertices(), rng);
  return density_mc(h, f, DensityKind::hom, block);
}

Estimate ind_density_mc(const Multigraphon& h, const Pattern& f, std::size_t n_samples, Rng& rng) {
  UniformBlock block(n_samples, f.num_vertices(), rng);
  return density_mc(h, f, DensityKind::ind, block);
}

Estimate simple_density_mc(const SimpleGraphon& w, const Pattern& f, const UniformBlock& block) {
  if (!f.is_simple()) throw std::invalid_argument("simple_density_mc: pattern must be simple");
  const std::size_t k = f.num_vertices();
  if (block.width() < k) throw std::invalid_argument("simple_density_mc: uniform block narrower than pattern");
  std::vector<double> terms(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    const double* u = block.row(s);
    double prod = 1.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (f.at(i, j) == 1) prod *= w(u[i], u[j]);
    terms[s] = prod;
  }
  return Estimate::from_samples(terms);
}

namespace {

// Paired difference of two integrand vectors.
Estimate paired_gap(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) d[s] = a[s] - b[s];
  return Estimate::from_samples(d);
}

}  // namespace

GraphonDistance ms_distance_graphons(const Multigraphon& h1, const Multigraphon& h2,
                                     const GraphonDistanceOptions& options, std::size_t n_samples, Rng& rng) {
  const auto patterns = first_patterns(options.max_patterns, options.max_pattern_vertices);
  std::size_t width = 2;
  for (const Pattern& f : patterns) width = std::max(width, f.num_vertices());
  const UniformBlock block(n_samples, width, rng);

  std::uint32_t r_max = 32;
  if (options.max_multiplicity >= 0) {
    r_max = static_cast<std::uint32_t>(options.max_multiplicity);
  } else if (auto b1 = h1.support_bound(), b2 = h2.support_bound(); b1 && b2) {
    r_max = std::max(*b1, *b2) + 1;
  }

  double value = 0.0, se = 0.0, weight = 1.0;
  for (const Pattern& f : patterns) {
    weight /= 2.0;
    const Estimate gap = paired_gap(density_terms(h1, f, DensityKind::hom, block),
                                    density_terms(h2, f, DensityKind::hom, block));
    value += weight * std::abs(gap.value);
    se += weight * gap.std_error;
  }
  for (std::uint32_t r = 0; r <= r_max; ++r) {
    for (const Pattern& f : {Pattern::edge_bundle(r), Pattern::loops(r)}) {
      const Estimate gap = paired_gap(density_terms(h1, f, DensityKind::ind, block),
                                      density_terms(h2, f, DensityKind::ind, block));
      value += std::abs(gap.value);
      se += gap.std_error;
    }
  }

  double tail_mass = 0.0;
  for (std::size_t s = 0; s < block.size(); ++s) {
    const double* u = block.row(s);
    tail_mass += h1.tail(r_max + 1, u[0], u[1]) + h2.tail(r_max + 1, u[0], u[1]);
    tail_mass += h1.tail(2 * (r_max + 1), u[0], u[0]) + h2.tail(2 * (r_max + 1), u[0], u[0]);
  }
  tail_mass /= static_cast<double>(block.size());

  return {Estimate{value, n_samples, se}, weight + tail_mass};
}

std::pair<Rational, Rational> exact_d_sq_dg(const StepMultigraphon& h1, const StepMultigraphon& h2,
                                            std::uint32_t r) {
  const std::size_t n1 = h1.graph().num_vertices();
  const std::size_t n2 = h2.graph().num_vertices();
  std::vector<Rational> cuts;
  for (std::size_t i = 0; i <= n1; ++i) cuts.emplace_back(BigInt(i), BigInt(n1));
  for (std::size_t j = 0; j <= n2; ++j) cuts.emplace_back(BigInt(j), BigInt(n2));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Each refined interval lies inside one block of each grid.
  struct Piece {
    Rational width;
    Vertex b1, b2;
  };
  std::vector<Piece> pieces;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational mid = (cuts[c] + cuts[c + 1]) / 2;
    pieces.push_back({cuts[c + 1] - cuts[c], h1.block(to_double(mid)), h2.block(to_double(mid))});
  }
  auto indicator = [r](const Multigraph& g, Vertex a, Vertex b) { return g.multiplicity(a, b) >= r ? 1 : 0; };

  Rational sq(0), dg(0);
  for (const Piece& p : pieces) {
    for (const Piece& q : pieces) {
      const int d = indicator(h1.graph(), p.b1, q.b1) - indicator(h2.graph(), p.b2, q.b2);
      if (d != 0) sq += p.width * q.width;
    }
    const int d = indicator(h1.graph(), p.b1, p.b1) - indicator(h2.graph(), p.b2, p.b2);
    if (d != 0) dg += p.width;
  }
  return {sq, dg};
}

std::pair<Estimate, Estimate> d_sq_dg(const Multigraphon& h1, const Multigraphon& h2, std::uint32_t r,
                                      std::size_t n_samples, Rng& rng) {
  const auto* s1 = dynamic_cast<const StepMultigraphon*>(&h1);
  const auto* s2 = dynamic_cast<const StepMultigraphon*>(&h2);
  if (s1 && s2) {
    auto [sq, dg] = exact_d_sq_dg(*s1, *s2, r);
    return {Estimate::exact(to_double(sq)), Estimate::exact(to_double(dg))};
  }
  const UniformBlock block(n_samples, 2, rng);
  std::vector<double> sq(block.size()), dg(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    const double* u = block.row(s);
    sq[s] = std::abs(h1.tail(r, u[0], u[1]) - h2.tail(r, u[0], u[1]));
    dg[s] = std::abs(h1.tail(r, u[0], u[0]) - h2.tail(r, u[0], u[0]));
  }
  return {Estimate::from_samples(sq), Estimate::from_samples(dg)};
}

namespace {

struct ProbeSums {
  double total = 0.0;
  std::uint32_t last = 0;
};

// Sums eval(r, x, y) until the remaining mass is negligible or the support
// bound is reached.
ProbeSums sum_mass(const Multigraphon& h, double x, double y) {
  const auto bound = h.support_bound();
  ProbeSums out;
  for (std::uint32_t r = 0; r < 1'000'000; ++r) {
    out.total += h.eval(r, x, y);
    out.last = r;
    if (bound && r >= *bound) break;
    if (!bound && r > 20 && out.total > 0.5 && h.eval(r, x, y) + h.eval(r + 1, x, y) < 1e-18) break;
  }
  return out;
}

}  // namespace

AxiomReport check_axioms(const Multigraphon& h, std::size_t probes, Rng& rng) {
  AxiomReport rep;
  for (std::size_t p = 0; p < probes; ++p) {
    const double x = uniform01(rng), y = uniform01(rng);
    for (const auto& [a, b] : {std::pair{x, y}, std::pair{x, x}}) {
      const ProbeSums sums = sum_mass(h, a, b);
      rep.max_normalization_error = std::max(rep.max_normalization_error, std::abs(sums.total - 1.0));
      rep.max_tail_error = std::max(rep.max_tail_error, std::abs(h.tail(0, a, b) - 1.0));
      const std::uint32_t top = std::min<std::uint32_t>(sums.last + 1, 200);
      double prev_tail = h.tail(0, a, b);
      for (std::uint32_t r = 0; r <= top; ++r) {
        const double e = h.eval(r, a, b);
        rep.max_symmetry_error = std::max(rep.max_symmetry_error, std::abs(e - h.eval(r, b, a)));
        if (a == b && r % 2 == 1) rep.max_odd_diagonal_mass = std::max(rep.max_odd_diagonal_mass, e);
        const double next_tail = h.tail(r + 1, a, b);
        rep.max_tail_error = std::max(rep.max_tail_error, std::abs(prev_tail - next_tail - e));
        if (next_tail > prev_tail + 1e-15) rep.tail_monotone = false;
        prev_tail = next_tail;
      }
    }
  }
  return rep;
}

}  // namespace mgraphon
