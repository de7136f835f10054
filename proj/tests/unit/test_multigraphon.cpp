#include <gtest/gtest.h>

#include <cmath>

#include "mgraphon/density.hpp"
#include "mgraphon/limit.hpp"
#include "mgraphon/multigraphon.hpp"
#include "test_support.hpp"

using namespace mgraphon;

namespace {

std::shared_ptr<StepMultigraphon> step_of(const Multigraph& g) { return std::make_shared<StepMultigraphon>(g); }

void expect_axioms(const Multigraphon& h, Rng& rng) {
  const AxiomReport rep = check_axioms(h, 1000, rng);
  EXPECT_LE(rep.max_normalization_error, 1e-9);
  EXPECT_EQ(rep.max_symmetry_error, 0.0);
  EXPECT_EQ(rep.max_odd_diagonal_mass, 0.0);
  EXPECT_LE(rep.max_tail_error, 1e-9);
  EXPECT_TRUE(rep.tail_monotone);
}

}  // namespace

TEST(StepMultigraphon, EvaluatesBlocks) {
  Multigraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_loop(1);
  const StepMultigraphon h(g);
  EXPECT_EQ(h.block(0.0), 0u);
  EXPECT_EQ(h.block(0.5), 0u);
  EXPECT_EQ(h.block(0.51), 1u);
  EXPECT_EQ(h.block(1.0), 1u);
  EXPECT_EQ(h.eval(2, 0.2, 0.8), 1.0);
  EXPECT_EQ(h.eval(2, 0.7, 0.9), 1.0);  // z_22 = 2
  EXPECT_EQ(h.tail(3, 0.2, 0.8), 0.0);
  EXPECT_EQ(h.tail(1, 0.2, 0.3), 0.0);
}

TEST(Multigraphon, AxiomsOnEveryKernel) {
  Rng rng = derive_rng(20, 0);
  const auto step = step_of(test::random_multigraph(5, 12, rng));
  expect_axioms(*step, rng);
  expect_axioms(TruncatedMultigraphon(step), rng);
  expect_axioms(*static_limit_kernel(0.8, 1.0), rng);
  expect_axioms(*static_limit_kernel(2.5, 0.5), rng);
  expect_axioms(*static_limit_kernel(0.3, 3.0), rng);
  expect_axioms(*degenerate_kernel(0.5), rng);
  expect_axioms(TruncatedMultigraphon(static_limit_kernel(1.0, 1.0)), rng);
}

TEST(HomDensityMc, EmptyPatternIsExactlyOne) {
  Rng rng = derive_rng(21, 0);
  const Estimate e = hom_density_mc(*static_limit_kernel(1.0, 1.0), Pattern::empty(3), 1000, rng);
  EXPECT_EQ(e.value, 1.0);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(HomDensityMc, TriangleStepWithinFourSigma) {
  Rng rng = derive_rng(22, 0);
  const Estimate e = hom_density_mc(StepMultigraphon(test::triangle()), Pattern::edge_bundle(1), 1000000, rng);
  EXPECT_LT(std::abs(e.value - 2.0 / 3.0), 4.0 * e.std_error);
}

TEST(HomDensityMc, ZeroIntensityKernelHasNoEdges) {
  Rng rng = derive_rng(23, 0);
  const PoissonGammaKernel h(1.0, [](double) { return 0.0; });
  EXPECT_EQ(hom_density_mc(h, Pattern::edge_bundle(1), 1000, rng).value, 0.0);
  EXPECT_EQ(ind_density_mc(h, Pattern::edge_bundle(0), 1000, rng).value, 1.0);
}

TEST(IndDensityMc, SingleLoopStep) {
  Rng rng = derive_rng(24, 0);
  Multigraph g(1);
  g.add_loop(0);
  EXPECT_EQ(ind_density_mc(StepMultigraphon(g), Pattern::loops(1), 100, rng).value, 1.0);
}

namespace {

// Paired check of t^ind_F = t_F - t_G on a common block.
void expect_difference_identity(const Multigraphon& h, const Pattern& ind_f, const Pattern& f, const Pattern& g,
                                Rng& rng) {
  const UniformBlock block(200000, ind_f.num_vertices(), rng);
  const auto ind = density_terms(h, ind_f, DensityKind::ind, block);
  const auto t0 = density_terms(h, f, DensityKind::hom, block);
  const auto t1 = density_terms(h, g, DensityKind::hom, block);
  std::vector<double> diff(ind.size());
  for (std::size_t s = 0; s < ind.size(); ++s) diff[s] = ind[s] - (t0[s] - t1[s]);
  const Estimate d = Estimate::from_samples(diff);
  EXPECT_LE(std::abs(d.value), 5.0 * d.std_error + 1e-12) << ind_f.name();
}

}  // namespace

TEST(IndDensityMc, DifferenceOfHomDensities) {
  Rng rng = derive_rng(25, 0);
  // Loops: holds on every kernel.
  for (const auto& h : {static_limit_kernel(1.2, 1.0), static_limit_kernel(0.7, 2.0)})
    for (std::uint32_t r = 0; r <= 3; ++r)
      expect_difference_identity(*h, Pattern::loops(r), Pattern::loops(r), Pattern::loops(r + 1), rng);
  // Pairs: holds when the diagonal carries no loops.
  const auto bar = std::make_shared<TruncatedMultigraphon>(static_limit_kernel(1.2, 1.0));
  const auto simple = std::make_shared<StepMultigraphon>(test::random_multigraph(7, 12, rng).erased());
  for (const std::shared_ptr<const Multigraphon>& h : std::vector<std::shared_ptr<const Multigraphon>>{bar, simple})
    for (std::uint32_t r = 0; r <= 2; ++r)
      expect_difference_identity(*h, Pattern::edge_bundle(r), Pattern::edge_bundle(r), Pattern::edge_bundle(r + 1),
                                 rng);
}

TEST(IndDensityMc, PairDensityCarriesEndpointLoopFactors) {
  // t^ind_{K_{2,r}} integrates h(r; x, y) h(0; x, x) h(0; y, y).
  Rng rng = derive_rng(34, 0);
  const auto h = static_limit_kernel(1.2, 1.0);
  const UniformBlock block(100000, 2, rng);
  const auto ind = density_terms(*h, Pattern::edge_bundle(1), DensityKind::ind, block);
  for (std::size_t s = 0; s < block.size(); ++s) {
    const double* u = block.row(s);
    ASSERT_DOUBLE_EQ(ind[s], h->eval(1, u[0], u[1]) * h->eval(0, u[0], u[0]) * h->eval(0, u[1], u[1]));
  }
}

TEST(IndDensityMc, DegenerateKernelIsPoisson) {
  Rng rng = derive_rng(26, 0);
  const auto h = degenerate_kernel(0.5);
  for (std::uint32_t r = 0; r <= 3; ++r) {
    const Estimate e = ind_density_mc(*h, Pattern::edge_bundle(r), 10, rng);
    // p(r; c) off the diagonal, no loop at either endpoint: p(0; c/2)^2.
    EXPECT_NEAR(e.value, poisson_pmf(r, 0.5) * std::exp(-0.5), 1e-15);
    EXPECT_NEAR(e.std_error, 0.0, 1e-15);
  }
}

TEST(ErasedGraphon, ZeroWhenAllMassAtZero) {
  const auto h = std::make_shared<PoissonGammaKernel>(1.0, [](double) { return 0.0; });
  const ErasedGraphon w = erased_graphon(h);
  EXPECT_EQ(w(0.2, 0.7), 0.0);
}

TEST(ErasedGraphon, StepOfErasedGraph) {
  Rng rng = derive_rng(27, 0);
  const Multigraph g = test::random_multigraph(6, 14, rng);
  const ErasedGraphon w = erased_graphon(step_of(g));
  const StepMultigraphon erased(g.erased());
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      if (a == b) continue;
      const double x = (a + 0.5) / 6.0, y = (b + 0.5) / 6.0;
      EXPECT_EQ(w(x, y), erased.eval(1, x, y));
    }
}

TEST(ErasedGraphon, DegenerateKernelIsConstant) {
  const ErasedGraphon w = erased_graphon(degenerate_kernel(0.5));
  EXPECT_DOUBLE_EQ(w(0.1, 0.9), 1.0 - std::exp(-0.5));
  EXPECT_DOUBLE_EQ(w(0.4, 0.3), 1.0 - std::exp(-0.5));
}

TEST(ErasedGraphon, SimpleDensityEqualsTruncatedHomDensity) {
  Rng rng = derive_rng(28, 0);
  const auto h = static_limit_kernel(1.0, 1.0);
  const ErasedGraphon w = erased_graphon(h);
  const TruncatedMultigraphon bar(h);
  for (const char* name : {"K2_1", "triangle", "path3"}) {
    const Pattern f = Pattern::parse(name);
    const UniformBlock block(100000, f.num_vertices(), rng);
    const Estimate a = simple_density_mc(w, f, block);
    const Estimate b = density_mc(bar, f, DensityKind::hom, block);
    EXPECT_LE(std::abs(a.value - b.value), 5.0 * (a.std_error + b.std_error) + 1e-12) << name;
  }
}

TEST(GraphonDistance, SameObjectIsZeroAndSymmetric) {
  Rng rng = derive_rng(29, 0);
  const auto h1 = static_limit_kernel(1.0, 1.0);
  const auto h2 = static_limit_kernel(0.6, 2.0);
  EXPECT_EQ(ms_distance_graphons(*h1, *h1, {}, 2000, rng).value.value, 0.0);
  Rng a = derive_rng(30, 0), b = derive_rng(30, 0);
  EXPECT_EQ(ms_distance_graphons(*h1, *h2, {}, 2000, a).value.value,
            ms_distance_graphons(*h2, *h1, {}, 2000, b).value.value);
}

TEST(GraphonDistance, StepGraphsAgreeWithExactCellSums) {
  Rng rng = derive_rng(31, 0);
  const Multigraph g1 = test::random_multigraph(3, 4, rng);
  const Multigraph g2 = test::random_multigraph(3, 5, rng);
  GraphonDistanceOptions opt;
  opt.max_multiplicity = 8;
  // Exact value on h^G: hom parts are graph hom densities; induced parts are
  // cell shares over all n^2 ordered blocks (diagonal blocks included).
  auto induced_pair = [](const Multigraph& g, std::uint32_t r) {
    const std::size_t n = g.num_vertices();
    std::size_t hits = 0;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        hits += g.multiplicity(a, b) == r && g.multiplicity(a, a) == 0 && g.multiplicity(b, b) == 0;
    return static_cast<double>(hits) / static_cast<double>(n * n);
  };
  auto induced_loop = [](const Multigraph& g, std::uint32_t r) {
    std::size_t hits = 0;
    for (Vertex a = 0; a < g.num_vertices(); ++a) hits += g.multiplicity(a, a) == 2 * r;
    return static_cast<double>(hits) / static_cast<double>(g.num_vertices());
  };
  double exact = 0.0;
  const auto pats = first_patterns(opt.max_patterns, opt.max_pattern_vertices);
  for (std::size_t i = 0; i < pats.size(); ++i)
    exact += std::ldexp(1.0, -static_cast<int>(i + 1)) *
             std::abs(density_value(pats[i], g1, DensityKind::hom) - density_value(pats[i], g2, DensityKind::hom));
  for (std::uint32_t r = 0; r <= 8; ++r)
    exact += std::abs(induced_pair(g1, r) - induced_pair(g2, r)) + std::abs(induced_loop(g1, r) - induced_loop(g2, r));
  const GraphonDistance mc = ms_distance_graphons(StepMultigraphon(g1), StepMultigraphon(g2), opt, 200000, rng);
  EXPECT_LE(std::abs(mc.value.value - exact), 5.0 * mc.value.std_error + mc.truncation_bound);
}

TEST(Lipschitz, ExactOnStepMultigraphons) {
  Rng rng = derive_rng(32, 0);
  const auto pats = first_patterns(60, 3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n1 = 2 + uniform_index(rng, 3), n2 = 2 + uniform_index(rng, 3);
    const Multigraph g1 = test::random_multigraph(n1, 2 * n1, rng);
    const Multigraph g2 = test::random_multigraph(n2, 2 * n2, rng);
    const StepMultigraphon h1(g1), h2(g2);
    // Common grid: blow both up to n1 * n2 blocks.
    const Multigraph c1 = test::blow_up(g1, n2), c2 = test::blow_up(g2, n1);
    for (const Pattern& f : pats) {
      const Rational lhs = abs(hom_density(f, c1) - hom_density(f, c2));
      Rational rhs(0);
      for (std::size_t i = 0; i < f.num_vertices(); ++i) {
        rhs += exact_d_sq_dg(h1, h2, f.at(i, i)).second;
        for (std::size_t j = i + 1; j < f.num_vertices(); ++j) rhs += exact_d_sq_dg(h1, h2, f.at(i, j)).first;
      }
      ASSERT_LE(lhs, rhs) << f.name();
    }
  }
}

TEST(DsqDg, TrivialCases) {
  Rng rng = derive_rng(33, 0);
  const Multigraph g = test::random_multigraph(4, 6, rng);
  const StepMultigraphon h(g);
  const auto same = exact_d_sq_dg(h, h, 1);
  EXPECT_EQ(same.first, Rational(0));
  EXPECT_EQ(same.second, Rational(0));
  const auto zero = d_sq_dg(*static_limit_kernel(1.0, 1.0), *static_limit_kernel(2.0, 1.0), 0, 1000, rng);
  EXPECT_EQ(zero.first.value, 0.0);
  EXPECT_EQ(zero.second.value, 0.0);
}
