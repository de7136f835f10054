#include "mgraphon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace mgraphon::stats {

MeanCI mean_ci(std::span<const double> samples, double level) {
  if (samples.size() < 2) throw std::invalid_argument("mean_ci: need at least two samples");
  if (!(level >= 0.0 && level < 1.0)) throw std::invalid_argument("mean_ci: level must lie in [0, 1)");
  const double N = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / N;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (N - 1.0));
  if (level == 0.0) return {mean, 0.0};
  const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + level / 2.0);
  return {mean, z * sd / std::sqrt(N)};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double folded_normal_cdf(double x, double mu, double sigma, double shift) {
  if (!(sigma > 0.0)) throw std::invalid_argument("folded_normal_cdf: sigma must be positive");
  const double t = x - shift;
  if (t <= 0.0) return 0.0;
  return normal_cdf((t - mu) / sigma) - normal_cdf((-t - mu) / sigma);
}

double folded_normal_mean(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("folded_normal_mean: sigma must be positive");
  constexpr double kPi = 3.14159265358979323846;
  return sigma * std::sqrt(2.0 / kPi) * std::exp(-mu * mu / (2.0 * sigma * sigma)) +
         mu * (1.0 - 2.0 * normal_cdf(-mu / sigma));
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double N = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    // Handle ties: the empirical CDF jumps once per distinct value.
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double F = cdf(x[i]);
    const double F_left = cdf(std::nextafter(x[i], -std::numeric_limits<double>::infinity()));
    d = std::max({d, std::abs(static_cast<double>(j) / N - F), std::abs(F_left - static_cast<double>(i) / N)});
    i = j;
  }
  return d;
}

double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  constexpr double kPi = 3.14159265358979323846;
  if (x < 1.0) {
    // Theta-function form converges fast for small x.
    const double c = kPi * kPi / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k <= 50; k += 2) sum += std::exp(-static_cast<double>(k * k) * c);
    return std::sqrt(2.0 * kPi) / x * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 1.0 - 2.0 * sum;
}

double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("kolmogorov_quantile: alpha must lie in (0, 1)");
  double lo = 0.0;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_cdf(mid) >= 1.0 - alpha)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("ks_critical_value: n must be positive");
  return kolmogorov_quantile(alpha) / std::sqrt(static_cast<double>(n));
}

ChiSquare chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> expected_probs) {
  if (counts.size() != expected_probs.size() || counts.empty())
    throw std::invalid_argument("chi_square_gof: counts and probabilities must match and be nonempty");
  const double N = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (N == 0.0) throw std::invalid_argument("chi_square_gof: no observations");
  double stat = 0.0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (!(expected_probs[c] > 0.0)) throw std::invalid_argument("chi_square_gof: zero expected cell");
    const double e = N * expected_probs[c];
    const double diff = static_cast<double>(counts[c]) - e;
    stat += diff * diff / e;
  }
  return {stat, counts.size() - 1};
}

double chi_square_pvalue(const ChiSquare& c) {
  if (c.dof == 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(
                                                      static_cast<double>(c.dof)),
                                                  c.statistic));
}

}  // namespace mgraphon::stats
