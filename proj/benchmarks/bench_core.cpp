#include <benchmark/benchmark.h>

#include "sixv/enumerate.hpp"
#include "sixv/events.hpp"
#include "sixv/mcmc.hpp"
#include "sixv/transfer.hpp"

using namespace sixv;

static void BM_HeatBathSweepTorus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Domain t = Domain::torus(n);
  Chain chain(t, {2.0}, RngKey::from(1, 0));
  for (auto _ : state) {
    chain.sweep();
    benchmark::DoNotOptimize(chain.heights().data());
  }
  state.SetItemsProcessed(state.iterations() * t.face_count());
}
BENCHMARK(BM_HeatBathSweepTorus)->Arg(32)->Arg(64);

static void BM_HeatBathSweepPatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Domain d = lambda_domain(n);
  BoundaryCondition xi = boundary_01(d);
  Chain chain(d, xi, {2.0}, RngKey::from(1, 0));
  for (auto _ : state) {
    chain.sweep();
    benchmark::DoNotOptimize(chain.heights().data());
  }
  state.SetItemsProcessed(state.iterations() * chain.updatable_faces().size());
}
BENCHMARK(BM_HeatBathSweepPatch)->Arg(16)->Arg(32);

static void BM_TransferApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TransferOperator t(n, 2.0);
  std::vector<double> v(1u << n, 1.0), out;
  for (auto _ : state) {
    t.apply(v, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_TransferApply)->Arg(12)->Arg(16);

static void BM_LeadingEigenvalue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TransferOperator t(n, 1.0);
  for (auto _ : state) {
    auto eig = t.leading_eigenvalue(n / 2);
    benchmark::DoNotOptimize(eig.lambda);
  }
}
BENCHMARK(BM_LeadingEigenvalue)->Arg(8)->Arg(12);

static void BM_CircuitDetect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Domain d = lambda_domain(2 * n);
  BoundaryCondition xi = boundary_01(d);
  Chain chain(d, xi, {2.0}, RngKey::from(3, 0));
  for (int s = 0; s < 200; ++s) chain.sweep();
  for (auto _ : state) {
    bool hit = circuit(d, chain.heights(), n, 2 * n, {HeightPred::GE, 0});
    benchmark::DoNotOptimize(hit);
  }
}
BENCHMARK(BM_CircuitDetect)->Arg(8)->Arg(16);

static void BM_MinExtension(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Domain d = lambda_domain(n);
  BoundaryCondition xi = boundary_01(d);
  for (auto _ : state) {
    Heights lo = min_extension(d, xi);
    benchmark::DoNotOptimize(lo.data());
  }
}
BENCHMARK(BM_MinExtension)->Arg(16)->Arg(32);

static void BM_EnumerateExtensions(benchmark::State& state) {
  Domain d = lambda_domain(2);
  BoundaryCondition xi = boundary_01(d);
  for (auto _ : state) {
    long long cnt = 0;
    enumerate_extensions(d, xi, [&](const Heights&) { ++cnt; });
    benchmark::DoNotOptimize(cnt);
  }
}
BENCHMARK(BM_EnumerateExtensions);

BENCHMARK_MAIN();
