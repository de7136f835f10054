#include <benchmark/benchmark.h>

#include "mgraphon/density.hpp"
#include "mgraphon/dynamics.hpp"
#include "mgraphon/generators.hpp"
#include "mgraphon/limit.hpp"
#include "mgraphon/multigraphon.hpp"

namespace {

using namespace mgraphon;

ReconnectParams chain(std::size_t n) {
  ReconnectParams p;
  p.n = n;
  p.theta = 1.0;
  p.p1 = 0.3;
  p.p2 = 0.3;
  p.a = 0.2;
  p.rho0 = 0.5;
  return p;
}

void BM_ChainStep(benchmark::State& state) {
  const ReconnectParams p = chain(static_cast<std::size_t>(state.range(0)));
  Rng rng = derive_rng(1, 0);
  ReconnectState s = init_state(p, rng);
  for (auto _ : state) benchmark::DoNotOptimize(step(s, p, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChainStep)->Arg(20)->Arg(40)->Arg(100);

void BM_HalfEdgeChain(benchmark::State& state) {
  const ReconnectParams p = chain(40);
  const std::vector<std::uint64_t> steps{static_cast<std::uint64_t>(state.range(0))};
  Rng rng = derive_rng(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_half_edge_chain(p, steps, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HalfEdgeChain)->Arg(1 << 16);

void BM_ReflectedWalk(benchmark::State& state) {
  const ReconnectParams p = chain(40);
  const std::vector<std::uint64_t> steps{step_index(p.n, p.p1, 1.0)};
  Rng rng = derive_rng(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reflected_walk_path(p, steps, rng));
}
BENCHMARK(BM_ReflectedWalk);

void BM_SampleCm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DegreeSequence d{std::vector<std::uint64_t>(n, n / 2)};
  Rng rng = derive_rng(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_cm(d, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.total()));
}
BENCHMARK(BM_SampleCm)->Arg(100)->Arg(400);

void BM_Grow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::uint64_t>(0.4 * static_cast<double>(n * n));
  Rng rng = derive_rng(1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(grow(n, 1.0, m, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_Grow)->Arg(100)->Arg(200);

void BM_ExactPairDensity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = derive_rng(1, 5);
  const Multigraph g = sample_cm(DegreeSequence{std::vector<std::uint64_t>(n, n / 2)}, rng);
  const Pattern f = Pattern::edge_bundle(1);
  for (auto _ : state) benchmark::DoNotOptimize(density_value(f, g, DensityKind::ind));
}
BENCHMARK(BM_ExactPairDensity)->Arg(100)->Arg(400);

void BM_ExactTriangleDensity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = derive_rng(1, 6);
  const Multigraph g = grow(n, 1.0, n * n / 4, rng);
  const Pattern f = Pattern::parse("triangle");
  for (auto _ : state) benchmark::DoNotOptimize(density_value(f, g, DensityKind::hom));
}
BENCHMARK(BM_ExactTriangleDensity)->Arg(20)->Arg(40);

void BM_SampledTriangleDensity(benchmark::State& state) {
  Rng rng = derive_rng(1, 7);
  const Multigraph g = grow(200, 1.0, 16000, rng);
  const Pattern f = Pattern::parse("triangle");
  for (auto _ : state) benchmark::DoNotOptimize(sampled_density(f, g, DensityKind::ind, 10000, rng));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampledTriangleDensity);

void BM_KernelIndDensity(benchmark::State& state) {
  const auto h = static_limit_kernel(0.8, 1.0);
  const Pattern f = Pattern::parse("triangle");
  Rng rng = derive_rng(1, 8);
  for (auto _ : state) benchmark::DoNotOptimize(ind_density_mc(*h, f, 10000, rng));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_KernelIndDensity);

void BM_PsiExpectation(benchmark::State& state) {
  const Pattern f = Pattern::edge_bundle(1);
  Rng rng = derive_rng(1, 9);
  for (auto _ : state) benchmark::DoNotOptimize(psi_expectation(f, 0.8, MixingLaw::gamma(1.0), 10000, rng));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_PsiExpectation);

}  // namespace

BENCHMARK_MAIN();
