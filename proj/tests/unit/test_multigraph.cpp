#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mgraphon/density.hpp"
#include "mgraphon/graph_io.hpp"
#include "mgraphon/multigraph.hpp"
#include "mgraphon/oracle.hpp"
#include "mgraphon/pattern.hpp"
#include "test_support.hpp"

using namespace mgraphon;

TEST(Multigraph, AddEdgeUpdatesAllViews) {
  Multigraph g(2);
  g.add_edge(0, 1);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.multiplicity(0, 1), 1u);
  EXPECT_EQ(g.multiplicity(1, 0), 1u);
  EXPECT_EQ(g.half_edge_count(), 2u);
}

TEST(Multigraph, LoopCountsTwiceOnDiagonal) {
  Multigraph g(3);
  g.add_loop(1);
  g.add_loop(1);
  EXPECT_EQ(g.multiplicity(1, 1), 4u);
  EXPECT_EQ(g.degree(1), 4u);
  EXPECT_EQ(g.num_loops(), 2u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(Multigraph, AddLoopThenRemoveRestores) {
  Multigraph g(3);
  g.add_edge(0, 2);
  const Multigraph before = g;
  g.add_loop(0);
  g.remove_entry(g.num_entries() - 1);
  EXPECT_EQ(g, before);
  EXPECT_TRUE(g.check_invariants());
}

TEST(Multigraph, RandomMutationsKeepInvariants) {
  for (std::size_t n : {5u, 2100u}) {  // dense and hash-map storage
    Rng rng = derive_rng(11, n);
    Multigraph g(n);
    for (int t = 0; t < 100000; ++t) {
      const double u = uniform01(rng);
      const auto i = static_cast<Vertex>(uniform_index(rng, std::min<std::size_t>(n, 6)));
      const auto j = static_cast<Vertex>(uniform_index(rng, std::min<std::size_t>(n, 6)));
      if (u < 0.4 || g.num_entries() == 0) {
        g.add_edge(i, j);
      } else if (u < 0.7) {
        g.remove_entry(uniform_index(rng, g.num_entries()));
      } else {
        g.move_half_edge(uniform_index(rng, g.num_entries()), static_cast<int>(uniform_index(rng, 2)), i);
      }
    }
    EXPECT_TRUE(g.check_invariants()) << n;
    const auto deg = g.degrees();
    EXPECT_EQ(std::accumulate(deg.begin(), deg.end(), std::uint64_t{0}), 2 * g.num_entries());
    EXPECT_EQ(g.num_entries(), g.num_edges() + g.num_loops());
  }
}

TEST(Multigraph, MoveHalfEdgeTurnsEdgeIntoLoop) {
  Multigraph g(3);
  g.add_edge(0, 1);
  g.move_half_edge(0, 1, 0);
  EXPECT_EQ(g.multiplicity(0, 0), 2u);
  EXPECT_EQ(g.multiplicity(0, 1), 0u);
  EXPECT_EQ(g.degree(1), 0u);
  EXPECT_EQ(g.num_loops(), 1u);
  EXPECT_TRUE(g.check_invariants());
}

TEST(Multigraph, HalfEdgeOwnersArePaired) {
  Multigraph g(4);
  g.add_edge(0, 3);
  g.add_loop(2);
  EXPECT_EQ(g.half_edge_owner(0), 0u);
  EXPECT_EQ(g.half_edge_owner(1), 3u);
  EXPECT_EQ(g.half_edge_owner(2), 2u);
  EXPECT_EQ(g.half_edge_owner(3), 2u);
}

TEST(Multigraph, ErasedDropsLoopsAndMultiplicity) {
  Multigraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_loop(0);
  Multigraph expected(2);
  expected.add_edge(0, 1);
  EXPECT_EQ(g.erased(), expected);
  EXPECT_EQ(expected.erased(), expected);
  Rng rng = derive_rng(3, 0);
  const Multigraph r = test::random_multigraph(6, 15, rng);
  EXPECT_EQ(r.erased().erased(), r.erased());
}

TEST(Multigraph, CanonicalKeyRoundTrip) {
  Rng rng = derive_rng(5, 0);
  for (int t = 0; t < 50; ++t) {
    const Multigraph g = test::random_multigraph(5, 8, rng);
    EXPECT_EQ(Multigraph::from_canonical_key(g.canonical_key()), g);
  }
}

TEST(Pattern, RejectsOddDiagonalAndAsymmetry) {
  EXPECT_THROW(Pattern(1, {1}), std::invalid_argument);
  EXPECT_THROW(Pattern(2, {0, 1, 0, 0}), std::invalid_argument);
  EXPECT_NO_THROW(Pattern(2, {2, 1, 1, 0}));
}

TEST(Pattern, ParseNames) {
  EXPECT_EQ(Pattern::parse("K2_3"), Pattern::edge_bundle(3));
  EXPECT_EQ(Pattern::parse("L_2").at(0, 0), 4u);
  EXPECT_EQ(Pattern::parse("triangle").num_edges(), 3u);
  EXPECT_EQ(Pattern::parse("adj:2:2,1,0"), Pattern(2, {2, 1, 1, 0}));
  EXPECT_THROW(Pattern::parse("K3"), std::invalid_argument);
}

TEST(Pattern, EnumerationIsInjectiveAndCoversSmallSizes) {
  const auto pats = first_patterns(200);
  for (std::size_t i = 0; i < pats.size(); ++i)
    for (std::size_t j = i + 1; j < pats.size(); ++j) ASSERT_FALSE(pats[i] == pats[j]) << i << " " << j;
  // size 1: the one-vertex empty pattern only.
  EXPECT_EQ(pats[0], Pattern::empty(1));
  // Every pattern with k + e + l <= 3 appears.
  const std::vector<Pattern> small = {Pattern::empty(2), Pattern::loops(1), Pattern::empty(3),
                                      Pattern::edge_bundle(1), Pattern::loops(2)};
  for (const Pattern& p : small) EXPECT_NE(std::find(pats.begin(), pats.end(), p), pats.end()) << p.name();
  const auto again = first_patterns(200);
  EXPECT_EQ(pats, again);
}

TEST(Density, HandValuesOnTriangle) {
  const Multigraph tri = test::triangle();
  const Multigraph any3(3);
  EXPECT_EQ(hom_density(Pattern::empty(2), any3), Rational(1));
  EXPECT_EQ(hom_density(Pattern::edge_bundle(1), tri), Rational(2, 3));
  EXPECT_EQ(hom_density(Pattern::edge_bundle(2), tri), Rational(0));
  EXPECT_EQ(inj_density(Pattern::edge_bundle(1), tri), Rational(1));
  EXPECT_EQ(inj_density(Pattern::empty(4), tri), Rational(0));
  EXPECT_EQ(ind_density(Pattern::edge_bundle(1), tri), Rational(1));
  EXPECT_EQ(ind_density(Pattern::edge_bundle(0), tri), Rational(0));
}

TEST(Density, InducedMultiplicitiesPartitionPairs) {
  Rng rng = derive_rng(7, 0);
  for (int t = 0; t < 20; ++t) {
    const Multigraph g = test::random_multigraph(6, 20, rng);
    Rational pairs(0), loops(0);
    for (std::uint32_t r = 0; r <= g.max_edge_multiplicity(); ++r) pairs += ind_density(Pattern::edge_bundle(r), g);
    for (std::uint32_t r = 0; r <= g.max_loop_count(); ++r) loops += ind_density(Pattern::loops(r), g);
    // K_{2,r} also fixes both endpoints loop-free.
    std::uint64_t loopless = 0;
    for (Vertex v = 0; v < 6; ++v) loopless += g.multiplicity(v, v) == 0;
    EXPECT_EQ(pairs, Rational(loopless * (loopless - (loopless > 0)), 30));
    EXPECT_EQ(loops, Rational(1));
    const Multigraph simple = g.erased();
    Rational simple_pairs(0);
    for (std::uint32_t r = 0; r <= 1; ++r) simple_pairs += ind_density(Pattern::edge_bundle(r), simple);
    EXPECT_EQ(simple_pairs, Rational(1));
  }
}

TEST(Density, InclusionExclusionBound) {
  Rng rng = derive_rng(8, 0);
  const auto pats = first_patterns(60, 3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + uniform_index(rng, 6);
    const Multigraph g = test::random_multigraph(n, 3 * n, rng);
    for (const Pattern& f : pats) {
      const std::size_t k = f.num_vertices();
      const Rational gap = abs(inj_density(f, g) - hom_density(f, g));
      const Rational bound = Rational(k * (k - 1) / 2, n);
      EXPECT_LE(gap, bound) << f.name() << " n=" << n;
    }
  }
}

TEST(Density, IsomorphismInvariant) {
  Rng rng = derive_rng(9, 0);
  const auto pats = first_patterns(30, 3);
  for (int t = 0; t < 10; ++t) {
    const Multigraph g = test::random_multigraph(6, 14, rng);
    std::vector<Vertex> perm(6);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Multigraph h = g.relabeled(perm);
    for (const Pattern& f : pats)
      for (DensityKind kind : {DensityKind::hom, DensityKind::inj, DensityKind::ind})
        EXPECT_EQ(density(f, g, kind), density(f, h, kind));
  }
}

TEST(Density, MatchesNaiveOracle) {
  Rng rng = derive_rng(10, 0);
  const auto pats = first_patterns(80, 3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + uniform_index(rng, 7);
    const Multigraph g = test::random_multigraph(n, uniform_index(rng, 3 * n + 1), rng);
    const Pattern& f = pats[uniform_index(rng, pats.size())];
    for (DensityKind kind : {DensityKind::hom, DensityKind::inj, DensityKind::ind})
      ASSERT_EQ(density(f, g, kind), oracle::naive_density(f, g, kind)) << f.name() << " n=" << n;
  }
}

TEST(Density, BudgetIsEnforced) {
  const Multigraph g(50);
  EXPECT_THROW(count_maps(Pattern::empty(3), g, DensityKind::hom, 1000), BudgetExceeded);
}

TEST(SampledDensity, ConstantIndicators) {
  Rng rng = derive_rng(12, 0);
  const Estimate e = sampled_density(Pattern::empty(2), Multigraph(4), DensityKind::hom, 100, rng);
  EXPECT_EQ(e.value, 1.0);
  EXPECT_EQ(e.std_error, 0.0);
  const Estimate i = sampled_density(Pattern::edge_bundle(1), test::triangle(), DensityKind::ind, 10000, rng);
  EXPECT_EQ(i.value, 1.0);
}

TEST(SampledDensity, HomOnTriangleWithinFourSigma) {
  Rng rng = derive_rng(13, 0);
  const Estimate e = sampled_density(Pattern::edge_bundle(1), test::triangle(), DensityKind::hom, 100000, rng);
  EXPECT_LT(std::abs(e.value - 2.0 / 3.0), 4.0 * e.std_error);
}

TEST(SampledDensity, UnbiasedOverRepetitions) {
  Rng rng = derive_rng(14, 0);
  const Multigraph g = test::random_multigraph(7, 20, rng);
  const Pattern f = Pattern::parse("path3");
  for (DensityKind kind : {DensityKind::hom, DensityKind::inj, DensityKind::ind}) {
    const double exact = density_value(f, g, kind);
    double sum = 0.0, var = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
      const Estimate e = sampled_density(f, g, kind, 1000, rng);
      sum += e.value;
      var += e.std_error * e.std_error;
    }
    const double mean = sum / 200.0;
    const double se = std::sqrt(var) / 200.0;
    EXPECT_LE(std::abs(mean - exact), 5.0 * se + 1e-12) << to_string(kind);
  }
}

TEST(GraphDistance, IdenticalIsZeroAndSymmetric) {
  Rng rng = derive_rng(15, 0);
  for (int t = 0; t < 5; ++t) {
    const Multigraph a = test::random_multigraph(5, 9, rng);
    const Multigraph b = test::random_multigraph(5, 9, rng);
    const DistanceResult same = ms_distance(a, a);
    EXPECT_EQ(same.value, 0.0);
    EXPECT_EQ(same.truncation_bound, std::ldexp(1.0, -64));
    EXPECT_EQ(ms_distance(a, b).value, ms_distance(b, a).value);
  }
}

TEST(GraphDistance, SingleEdgeAgainstEmptyMatchesNaiveSum) {
  Multigraph one(2);
  one.add_edge(0, 1);
  const Multigraph none(2);
  DistanceOptions opt;
  const DistanceResult d = ms_distance(one, none, opt);
  // Direct double loop over the same truncated sums.
  double expected = 0.0;
  const auto pats = first_patterns(opt.max_patterns, opt.max_pattern_vertices);
  for (std::size_t i = 0; i < pats.size(); ++i)
    expected += std::ldexp(1.0, -static_cast<int>(i + 1)) *
                std::abs(to_double(oracle::naive_density(pats[i], one, DensityKind::hom)) -
                         to_double(oracle::naive_density(pats[i], none, DensityKind::hom)));
  const std::uint32_t R = std::max(one.max_edge_multiplicity(), none.max_edge_multiplicity()) + 1;
  for (std::uint32_t r = 0; r <= R; ++r) {
    expected += std::abs(to_double(oracle::naive_density(Pattern::edge_bundle(r), one, DensityKind::ind)) -
                             to_double(oracle::naive_density(Pattern::edge_bundle(r), none, DensityKind::ind)));
    expected += std::abs(to_double(oracle::naive_density(Pattern::loops(r), one, DensityKind::ind)) -
                             to_double(oracle::naive_density(Pattern::loops(r), none, DensityKind::ind)));
  }
  EXPECT_NEAR(d.value, expected, 1e-12);
}

TEST(GraphIo, ReadWriteRoundTrip) {
  std::istringstream in("# two vertices\n3\n1 2\n\n2 2\n1 3 # trailing\n");
  const Multigraph g = read_graph(in, "inline");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.multiplicity(0, 1), 1u);
  EXPECT_EQ(g.multiplicity(1, 1), 2u);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream back(out.str());
  EXPECT_EQ(read_graph(back, "back"), g);
}

TEST(GraphIo, ParseErrorsCarryLineNumbers) {
  std::istringstream in("3\n1 2\n1 9\n");
  try {
    read_graph(in, "bad.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.txt:3"), std::string::npos);
  }
}
