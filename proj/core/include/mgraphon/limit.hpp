#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "mgraphon/estimate.hpp"
#include "mgraphon/multigraphon.hpp"
#include "mgraphon/pattern.hpp"
#include "mgraphon/random.hpp"

namespace mgraphon {

/// Poisson mass p(r; lambda) = e^{-lambda} lambda^r / r!, with p(0; 0) = 1.
double poisson_pmf(std::uint64_t r, double lambda);
/// P(Poisson(lambda) >= r).
double poisson_tail(std::uint64_t r, double lambda);

/// Psi(x): CDF of Gamma(shape theta, rate theta), mean 1.
double gamma_cdf(double x, double theta);
/// Generalized inverse of Psi on [0, 1]; u = 1 gives +infinity.
double gamma_quantile(double u, double theta);

using QuantileFn = std::function<double(double)>;

/// h(r; x, y) = p(r; y Q(x) Q(y)) off the diagonal and p(r/2; y Q(x)^2 / 2)
/// on it (0 for odd r). Q is a quantile function.
class PoissonGammaKernel final : public Multigraphon {
 public:
  PoissonGammaKernel(double y, QuantileFn quantile);

  double eval(std::uint32_t r, double x, double y) const override;
  double tail(std::uint32_t r, double x, double y) const override;

  double level() const { return y_; }
  /// Poisson mean on the cell (x, y); loop count mean on the diagonal.
  double intensity(double x, double y) const;

 private:
  double q(double u) const;

  double y_;
  QuantileFn quantile_;
};

/// Kernel with Q = gamma_quantile(., theta).
std::shared_ptr<PoissonGammaKernel> static_limit_kernel(double y, double theta);
/// Constant degrees c n: Q = 1 and y = c.
std::shared_ptr<PoissonGammaKernel> degenerate_kernel(double c);

struct LimitParams {
  double theta = 1.0;
  double a = 0.0;
  double rho0 = 0.0;
  /// Var(2B(s)) per unit time. 4 is standard Brownian motion B.
  double variance_rate = 4.0;

  void validate() const;
};

/// Y(s) = a + |W(s) + rho0 - a| at sorted times, W a centred Brownian motion
/// with Var W(s) = variance_rate * s, sampled from Gaussian increments.
std::vector<double> sample_limit_path(const LimitParams& params, std::span<const double> times, Rng& rng);

/// Law of the vertex weights zeta_i.
struct MixingLaw {
  enum class Kind { gamma, constant };
  Kind kind = Kind::gamma;
  double parameter = 1.0;  // theta for gamma, the value for constant

  static MixingLaw gamma(double theta) { return {Kind::gamma, theta}; }
  static MixingLaw constant(double value) { return {Kind::constant, value}; }
};

/// f(z; y) = prod_{i<j} p(a_ij; y z_i z_j) prod_i p(a_ii/2; y z_i^2/2).
double psi_integrand(const Pattern& f, std::span<const double> zeta, double y);

/// psi(y) = E f(zeta; y). Exact for a constant law and for odd a_ii (value
/// 0); Monte Carlo over n_samples weight draws otherwise.
Estimate psi_expectation(const Pattern& f, double y, const MixingLaw& law, std::size_t n_samples, Rng& rng);

struct NestedEstimate {
  Estimate estimate;          // std_error from the spread of outer means
  double between_var = 0.0;   // variance of psi(Y(s)) across paths
  double within_var = 0.0;    // mean inner variance over N_inner
};

/// E psi(Y(s)) with Y(s) from sample_limit_path and zeta ~ Gamma(theta, theta):
/// n_outer path draws, n_inner weight draws each.
NestedEstimate expected_ind_density_at_time(const Pattern& f, double s, const LimitParams& params,
                                            std::size_t n_outer, std::size_t n_inner, Rng& rng);

using SymmetricFn = std::function<double(std::span<const double>)>;

/// (n)_k^{-1} sum over ordered k-tuples of distinct indices of f(x_{i1}..x_{ik}).
/// Exact when (n)_k <= budget, otherwise n_samples uniform injections.
/// Throws std::invalid_argument when k > n.
Estimate u_statistic(const SymmetricFn& f, std::size_t k, std::span<const double> x, Rng& rng,
                     std::uint64_t budget = 10'000'000, std::size_t n_samples = 100'000);

}  // namespace mgraphon
