#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mgraphon/random.hpp"
#include "mgraphon/stats.hpp"

using namespace mgraphon;
using namespace mgraphon::stats;

TEST(MeanCi, HandValues) {
  const std::vector<double> constant{3.0, 3.0, 3.0};
  EXPECT_EQ(mean_ci(constant, 0.95).half_width, 0.0);
  const std::vector<double> two{0.0, 2.0};
  const MeanCI ci = mean_ci(two, 0.95);
  EXPECT_DOUBLE_EQ(ci.mean, 1.0);
  // sd = sqrt(2), N = 2: half-width = z * sqrt(2) / sqrt(2) = z.
  EXPECT_NEAR(ci.half_width, 1.959963984540054, 1e-12);
  EXPECT_EQ(mean_ci(two, 0.0).half_width, 0.0);
  const std::vector<double> one{1.0};
  EXPECT_THROW(mean_ci(one, 0.95), std::invalid_argument);
}

TEST(FoldedNormal, CdfShape) {
  EXPECT_EQ(folded_normal_cdf(0.2, 0.3, 2.0, 0.2), 0.0);
  EXPECT_EQ(folded_normal_cdf(-1.0, 0.3, 2.0, 0.2), 0.0);
  double prev = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double v = folded_normal_cdf(0.2 + 0.05 * k, 0.3, 2.0, 0.2);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(folded_normal_cdf(40.0, 0.3, 2.0, 0.2), 1.0, 1e-12);
  EXPECT_THROW(folded_normal_cdf(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(FoldedNormal, MeanAgainstIntegral) {
  // Trapezoid integral of the survival function.
  const double mu = 0.3, sigma = 2.0;
  double integral = 0.0;
  const double h = 1e-4;
  for (double x = 0.0; x < 30.0; x += h)
    integral += h * (2.0 - folded_normal_cdf(x, mu, sigma) - folded_normal_cdf(x + h, mu, sigma)) / 2.0;
  EXPECT_NEAR(folded_normal_mean(mu, sigma), integral, 1e-6);
}

TEST(Ks, SelfConsistencyAcrossSeeds) {
  int passes = 0;
  const double crit = ks_critical_value(10000, 0.01);
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng = derive_rng(70, seed);
    std::normal_distribution<double> normal(0.3, 2.0);
    std::vector<double> x(10000);
    for (double& v : x) v = 0.2 + std::abs(normal(rng));
    passes += ks_statistic(x, [](double t) { return folded_normal_cdf(t, 0.3, 2.0, 0.2); }) < crit;
  }
  EXPECT_GE(passes, 98);
}

TEST(Ks, SupportViolationAndEmpiricalSelf) {
  const std::vector<double> below{0.0, 0.05, 0.1};
  EXPECT_DOUBLE_EQ(ks_statistic(below, [](double t) { return folded_normal_cdf(t, 0.3, 2.0, 0.2); }), 1.0);
  const std::vector<double> x{0.5, 0.1, 0.9, 0.3, 0.3};
  auto ecdf = [&](double t) {
    double c = 0;
    for (double v : x) c += v <= t;
    return c / x.size();
  };
  EXPECT_LE(ks_statistic(x, ecdf), 1.0 / x.size());
  EXPECT_THROW(ks_statistic(std::vector<double>{}, ecdf), std::invalid_argument);
}

TEST(Kolmogorov, KnownQuantiles) {
  EXPECT_NEAR(kolmogorov_quantile(0.01), 1.6276, 1e-4);
  EXPECT_NEAR(kolmogorov_quantile(0.05), 1.3581, 1e-4);
  EXPECT_NEAR(kolmogorov_cdf(1.0), 0.7300003, 1e-6);
  EXPECT_NEAR(kolmogorov_cdf(0.5), 0.0360547, 1e-6);
}

TEST(ChiSquare, HandValues) {
  const std::vector<std::uint64_t> proportional{30, 70};
  const std::vector<double> p{0.3, 0.7};
  EXPECT_NEAR(chi_square_gof(proportional, p).statistic, 0.0, 1e-12);
  const std::vector<std::uint64_t> c{60, 40};
  const std::vector<double> half{0.5, 0.5};
  const ChiSquare x = chi_square_gof(c, half);
  EXPECT_DOUBLE_EQ(x.statistic, 4.0);
  EXPECT_EQ(x.dof, 1u);
  EXPECT_NEAR(chi_square_pvalue(x), 0.0455003, 1e-6);
  const std::vector<std::uint64_t> single{5};
  const std::vector<double> all{1.0};
  EXPECT_EQ(chi_square_gof(single, all).dof, 0u);
  const std::vector<double> zero{1.0, 0.0};
  EXPECT_THROW(chi_square_gof(c, zero), std::invalid_argument);
}
