#include <benchmark/benchmark.h>

#include <lassopath/datagen.hpp>
#include <lassopath/diagnostics.hpp>
#include <lassopath/gpc.hpp>
#include <lassopath/homotopy.hpp>
#include <lassopath/solvers.hpp>

namespace {

using namespace lassopath;

void BM_GramFactorize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto instance = generate_instance(n, 2 * n, n / 2, 0.3, 17);
  std::vector<int> support;
  for (int j = 0; j < n; ++j) support.push_back(2 * j);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_factorize(instance.design, support));
  }
}
BENCHMARK(BM_GramFactorize)->Arg(8)->Arg(16)->Arg(32);

void BM_ComputePath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto instance = generate_instance(n, 2 * n + 5, n / 3, 0.4, 23);
  const double tau = compute_tau(instance.design, instance.response);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        compute_path(instance.design, instance.response, 1e-6 * tau));
  }
}
BENCHMARK(BM_ComputePath)->Arg(10)->Arg(20)->Arg(40);

void BM_ProximalSolve(benchmark::State& state) {
  const auto instance = generate_instance(10, 25, 5, 0.4, 29);
  const double tau = compute_tau(instance.design, instance.response);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        proximal_solve(instance.design, instance.response, tau / 4));
  }
}
BENCHMARK(BM_ProximalSolve);

void BM_GpcExhaustive(benchmark::State& state) {
  const auto instance = generate_instance(3, 5, 2, 0.1, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_gpc(instance.design));
  }
}
BENCHMARK(BM_GpcExhaustive);

void BM_AuditLogGrid(benchmark::State& state) {
  const auto instance = generate_instance(10, 25, 5, 0.5, 31);
  const double tau = compute_tau(instance.design, instance.response);
  const LassoPath path =
      compute_path(instance.design, instance.response, 1e-6 * tau);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_audit(path, GridSpec::log(50)));
  }
}
BENCHMARK(BM_AuditLogGrid);

}  // namespace

BENCHMARK_MAIN();
