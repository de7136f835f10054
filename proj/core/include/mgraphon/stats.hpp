#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>

namespace mgraphon::stats {

struct MeanCI {
  double mean = 0.0;
  double half_width = 0.0;
};

/// Normal-approximation interval: half-width z_{(1+level)/2} sd / sqrt(N).
/// Throws std::invalid_argument for fewer than 2 samples or level outside
/// [0, 1).
MeanCI mean_ci(std::span<const double> samples, double level);

double normal_cdf(double x);

/// CDF of shift + |N(mu, sigma^2)|. Throws for sigma <= 0.
double folded_normal_cdf(double x, double mu, double sigma, double shift = 0.0);
/// E|N(mu, sigma^2)|.
double folded_normal_mean(double mu, double sigma);

/// sup_x |F_N(x) - cdf(x)| over the empirical CDF of the samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Kolmogorov limit law P(K <= x) = 1 - 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 x^2}.
double kolmogorov_cdf(double x);
/// Smallest x with kolmogorov_cdf(x) >= 1 - alpha.
double kolmogorov_quantile(double alpha);
/// Asymptotic level-alpha critical value of the KS statistic at sample size n.
double ks_critical_value(std::size_t n, double alpha);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
};

/// sum (O - E)^2 / E with E = N p, dof = cells - 1. Throws for a zero
/// expected probability, an empty sample or mismatched sizes.
ChiSquare chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> expected_probs);
/// Upper tail P(chi^2_dof >= statistic).
double chi_square_pvalue(const ChiSquare& c);

}  // namespace mgraphon::stats
