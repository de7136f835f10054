#include "mgraphon/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "mgraphon/density.hpp"

namespace mgraphon {

double poisson_pmf(std::uint64_t r, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson_pmf: lambda must be non-negative");
  if (lambda == 0.0) return r == 0 ? 1.0 : 0.0;
  const double rd = static_cast<double>(r);
  return std::exp(rd * std::log(lambda) - lambda - std::lgamma(rd + 1.0));
}

double poisson_tail(std::uint64_t r, double lambda) {
  if (r == 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  // Regularized lower incomplete gamma: P(X >= r) = P(r, lambda).
  return boost::math::gamma_p(static_cast<double>(r), lambda);
}

double gamma_cdf(double x, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("gamma_cdf: theta must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(theta, theta * x);
}

double gamma_quantile(double u, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("gamma_quantile: theta must be positive");
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("gamma_quantile: u must lie in [0, 1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  return boost::math::gamma_p_inv(theta, u) / theta;
}

PoissonGammaKernel::PoissonGammaKernel(double y, QuantileFn quantile) : y_(y), quantile_(std::move(quantile)) {
  if (!(y > 0.0)) throw std::invalid_argument("PoissonGammaKernel: y must be positive");
  if (!quantile_) throw std::invalid_argument("PoissonGammaKernel: missing quantile function");
}

double PoissonGammaKernel::q(double u) const {
  // The kernel is defined almost everywhere; u = 1 would map to infinity.
  static const double below_one = std::nextafter(1.0, 0.0);
  return quantile_(std::clamp(u, 0.0, below_one));
}

double PoissonGammaKernel::intensity(double x, double y) const {
  if (x == y) {
    const double qx = q(x);
    return y_ * qx * qx / 2.0;
  }
  return y_ * (q(x) * q(y));
}

double PoissonGammaKernel::eval(std::uint32_t r, double x, double y) const {
  if (x == y) return r % 2 == 0 ? poisson_pmf(r / 2, intensity(x, x)) : 0.0;
  return poisson_pmf(r, intensity(x, y));
}

double PoissonGammaKernel::tail(std::uint32_t r, double x, double y) const {
  if (x == y) return poisson_tail((r + 1) / 2, intensity(x, x));
  return poisson_tail(r, intensity(x, y));
}

std::shared_ptr<PoissonGammaKernel> static_limit_kernel(double y, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("static_limit_kernel: theta must be positive");
  return std::make_shared<PoissonGammaKernel>(y, [theta](double u) { return gamma_quantile(u, theta); });
}

std::shared_ptr<PoissonGammaKernel> degenerate_kernel(double c) {
  return std::make_shared<PoissonGammaKernel>(c, [](double) { return 1.0; });
}

void LimitParams::validate() const {
  if (!(theta > 0.0)) throw std::invalid_argument("LimitParams: theta must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("LimitParams: a must be positive");
  if (!(rho0 >= a)) throw std::invalid_argument("LimitParams: rho0 must be at least a");
  if (!(variance_rate > 0.0)) throw std::invalid_argument("LimitParams: variance_rate must be positive");
}

std::vector<double> sample_limit_path(const LimitParams& params, std::span<const double> times, Rng& rng) {
  params.validate();
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0))
    throw std::invalid_argument("sample_limit_path: times must be sorted and non-negative");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out;
  out.reserve(times.size());
  double w = 0.0;
  double prev = 0.0;
  for (double s : times) {
    if (s > prev) w += std::sqrt(params.variance_rate * (s - prev)) * normal(rng);
    prev = s;
    out.push_back(params.a + std::abs(w + params.rho0 - params.a));
  }
  return out;
}

double psi_integrand(const Pattern& f, std::span<const double> zeta, double y) {
  const std::size_t k = f.num_vertices();
  double prod = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint32_t aii = f.at(i, i);
    if (aii % 2 != 0) return 0.0;
    prod *= poisson_pmf(aii / 2, y * zeta[i] * zeta[i] / 2.0);
    for (std::size_t j = i + 1; j < k; ++j) prod *= poisson_pmf(f.at(i, j), y * zeta[i] * zeta[j]);
  }
  return prod;
}

namespace {

bool has_odd_diagonal(const Pattern& f) {
  for (std::size_t i = 0; i < f.num_vertices(); ++i)
    if (f.at(i, i) % 2 != 0) return true;
  return false;
}

std::vector<double> psi_samples(const Pattern& f, double y, double theta, std::size_t n_samples, Rng& rng) {
  std::gamma_distribution<double> gamma(theta, 1.0 / theta);
  std::vector<double> zeta(f.num_vertices());
  std::vector<double> values(n_samples);
  for (double& v : values) {
    for (double& z : zeta) z = gamma(rng);
    v = psi_integrand(f, zeta, y);
  }
  return values;
}

}  // namespace

Estimate psi_expectation(const Pattern& f, double y, const MixingLaw& law, std::size_t n_samples, Rng& rng) {
  if (has_odd_diagonal(f)) return Estimate::exact(0.0);
  if (law.kind == MixingLaw::Kind::constant) {
    const std::vector<double> zeta(f.num_vertices(), law.parameter);
    return Estimate::exact(psi_integrand(f, zeta, y));
  }
  if (n_samples == 0) throw std::invalid_argument("psi_expectation: n_samples must be positive");
  const auto values = psi_samples(f, y, law.parameter, n_samples, rng);
  return Estimate::from_samples(values);
}

NestedEstimate expected_ind_density_at_time(const Pattern& f, double s, const LimitParams& params,
                                            std::size_t n_outer, std::size_t n_inner, Rng& rng) {
  params.validate();
  if (n_outer < 2 || n_inner < 1) throw std::invalid_argument("expected_ind_density_at_time: need n_outer >= 2");
  if (has_odd_diagonal(f)) return {Estimate::exact(0.0), 0.0, 0.0};
  const double times[] = {s};
  std::vector<double> outer(n_outer);
  double within = 0.0;
  for (std::size_t o = 0; o < n_outer; ++o) {
    const double y = sample_limit_path(params, times, rng).front();
    const auto inner = psi_samples(f, y, params.theta, n_inner, rng);
    const double mean = std::accumulate(inner.begin(), inner.end(), 0.0) / static_cast<double>(n_inner);
    outer[o] = mean;
    if (n_inner > 1) {
      double ss = 0.0;
      for (double v : inner) ss += (v - mean) * (v - mean);
      within += ss / static_cast<double>(n_inner - 1);
    }
  }
  NestedEstimate out;
  out.estimate = Estimate::from_samples(outer);
  out.estimate.n_samples = n_outer * n_inner;
  out.within_var = within / static_cast<double>(n_outer);
  // Var(outer mean) = between + within / n_inner.
  const double var_outer = std::pow(out.estimate.std_error, 2) * static_cast<double>(n_outer);
  out.between_var = std::max(0.0, var_outer - out.within_var / static_cast<double>(n_inner));
  return out;
}

Estimate u_statistic(const SymmetricFn& f, std::size_t k, std::span<const double> x, Rng& rng,
                     std::uint64_t budget, std::size_t n_samples) {
  const std::size_t n = x.size();
  if (k > n) throw std::invalid_argument("u_statistic: k exceeds n");
  std::vector<double> args(k);
  if (map_space_size(k, n, DensityKind::inj) <= budget) {
    std::vector<std::size_t> idx(k);
    std::vector<bool> used(n, false);
    double sum = 0.0;
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
      if (depth == k) {
        for (std::size_t t = 0; t < k; ++t) args[t] = x[idx[t]];
        sum += f(args);
        ++count;
        return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        idx[depth] = i;
        self(self, depth + 1);
        used[i] = false;
      }
    };
    rec(rec, 0);
    return Estimate::exact(sum / static_cast<double>(count));
  }
  if (n_samples < 2) throw std::invalid_argument("u_statistic: n_samples must be at least 2");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> values(n_samples);
  for (double& v : values) {
    // Partial Fisher-Yates: first k entries form a uniform injection.
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t pick = t + uniform_index(rng, n - t);
      std::swap(perm[t], perm[pick]);
      args[t] = x[perm[t]];
    }
    v = f(args);
  }
  return Estimate::from_samples(values);
}

}  // namespace mgraphon
