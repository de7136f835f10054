#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mgraphon/density.hpp"
#include "mgraphon/estimate.hpp"
#include "mgraphon/multigraph.hpp"
#include "mgraphon/pattern.hpp"
#include "mgraphon/random.hpp"
#include "mgraphon/rational.hpp"

namespace mgraphon {

/// A multigraphon h(r; x, y): for each (x, y) in [0,1]^2 a probability
/// distribution over multiplicities r, symmetric in (x, y), with no odd mass
/// on the diagonal. Implementations are immutable and thread-safe.
class Multigraphon {
 public:
  virtual ~Multigraphon() = default;

  virtual double eval(std::uint32_t r, double x, double y) const = 0;

  /// sum_{s >= r} h(s; x, y). The default sums the complement.
  virtual double tail(std::uint32_t r, double x, double y) const;

  /// Largest r carrying mass anywhere, when finite.
  virtual std::optional<std::uint32_t> support_bound() const { return std::nullopt; }
};

/// h^G(r; x, y) = 1[z_{ceil(nx) ceil(ny)} = r].
class StepMultigraphon final : public Multigraphon {
 public:
  explicit StepMultigraphon(Multigraph g);

  double eval(std::uint32_t r, double x, double y) const override;
  double tail(std::uint32_t r, double x, double y) const override;
  std::optional<std::uint32_t> support_bound() const override { return max_entry_; }

  const Multigraph& graph() const { return g_; }
  /// 0-based block holding x; x = 0 joins the first block.
  Vertex block(double x) const;

 private:
  Multigraph g_;
  std::uint32_t max_entry_ = 0;
};

/// Two-level truncation used for erased graphons: off the diagonal mass at 0
/// stays, all r >= 1 mass moves to 1; the diagonal is a point mass at 0.
class TruncatedMultigraphon final : public Multigraphon {
 public:
  explicit TruncatedMultigraphon(std::shared_ptr<const Multigraphon> h) : h_(std::move(h)) {}
  double eval(std::uint32_t r, double x, double y) const override;
  std::optional<std::uint32_t> support_bound() const override { return 1; }

 private:
  std::shared_ptr<const Multigraphon> h_;
};

/// Simple graphon W(x, y) in [0,1].
class SimpleGraphon {
 public:
  virtual ~SimpleGraphon() = default;
  virtual double operator()(double x, double y) const = 0;
};

/// Erased graphon: sum_{r >= 1} h(r; x, y).
class ErasedGraphon final : public SimpleGraphon {
 public:
  explicit ErasedGraphon(std::shared_ptr<const Multigraphon> h) : h_(std::move(h)) {}
  double operator()(double x, double y) const override { return h_->tail(1, x, y); }

 private:
  std::shared_ptr<const Multigraphon> h_;
};

inline ErasedGraphon erased_graphon(std::shared_ptr<const Multigraphon> h) { return ErasedGraphon(std::move(h)); }

/// N x width matrix of iid uniforms. Feeding the same block to several
/// estimators gives paired (common random number) estimates.
class UniformBlock {
 public:
  UniformBlock(std::size_t n_samples, std::size_t width, Rng& rng);
  std::size_t size() const { return n_; }
  std::size_t width() const { return width_; }
  const double* row(std::size_t s) const { return values_.data() + s * width_; }

 private:
  std::size_t n_;
  std::size_t width_;
  std::vector<double> values_;
};

/// Per-sample integrands of t_F(h) (kind hom: product of tails) or
/// t^ind_F(h) (kind ind: product of point masses).
std::vector<double> density_terms(const Multigraphon& h, const Pattern& f, DensityKind kind,
                                  const UniformBlock& block);

Estimate density_mc(const Multigraphon& h, const Pattern& f, DensityKind kind, const UniformBlock& block);
Estimate hom_density_mc(const Multigraphon& h, const Pattern& f, std::size_t n_samples, Rng& rng);
Estimate ind_density_mc(const Multigraphon& h, const Pattern& f, std::size_t n_samples, Rng& rng);

/// t^simple_F(W) for a simple pattern F.
Estimate simple_density_mc(const SimpleGraphon& w, const Pattern& f, const UniformBlock& block);

struct GraphonDistanceOptions {
  std::size_t max_patterns = 64;
  std::size_t max_pattern_vertices = 3;
  /// R_max; negative means (largest support bound) + 1, or 32 without bounds.
  int max_multiplicity = -1;
};

struct GraphonDistance {
  /// Plug-in value; std_error sums the paired per-term standard errors.
  Estimate value;
  /// 2^{-I_max} plus the estimated induced mass beyond R_max.
  double truncation_bound = 0.0;
};

/// Truncated d_ms between multigraphons from paired Monte Carlo estimates.
GraphonDistance ms_distance_graphons(const Multigraphon& h1, const Multigraphon& h2,
                                     const GraphonDistanceOptions& options, std::size_t n_samples, Rng& rng);

/// d_sq and d_dg between the tails h1^{>=r} and h2^{>=r}. Exact (stderr 0)
/// when both are step multigraphons, Monte Carlo otherwise.
std::pair<Estimate, Estimate> d_sq_dg(const Multigraphon& h1, const Multigraphon& h2, std::uint32_t r,
                                      std::size_t n_samples, Rng& rng);

/// Exact d_sq / d_dg of tails of two step multigraphons on the common
/// refinement of their grids.
std::pair<Rational, Rational> exact_d_sq_dg(const StepMultigraphon& h1, const StepMultigraphon& h2,
                                            std::uint32_t r);

struct AxiomReport {
  double max_normalization_error = 0.0;
  double max_symmetry_error = 0.0;
  double max_odd_diagonal_mass = 0.0;
  double max_tail_error = 0.0;  // |tail(r) - sum_{s>=r} eval(s)|, tail(0) = 1
  bool tail_monotone = true;
};

/// Probes the multigraphon axioms at random (x, y) and diagonal points.
AxiomReport check_axioms(const Multigraphon& h, std::size_t probes, Rng& rng);

}  // namespace mgraphon
