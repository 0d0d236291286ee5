#include <benchmark/benchmark.h>

#include "enaqt/binary_tree.hpp"
#include "enaqt/dynamics.hpp"
#include "enaqt/fmo.hpp"

using namespace enaqt;

namespace {

const FmoModel& fmo() {
  static const FmoModel m = load_fmo_model();
  return m;
}

TransportSystem tree(int generation, double disorder_cm) {
  TreeSpec spec = TreeSpec::with_relative_rates(generation, 100.0);
  spec.disorder_cm = disorder_cm;
  spec.rng_seed = 3;
  return generate_tree(spec);
}

void BM_BuildLiouvillian(benchmark::State& state) {
  const TransportSystem sys = tree(static_cast<int>(state.range(0)), 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(sys));
}
BENCHMARK(BM_BuildLiouvillian)->DenseRange(2, 4);

void BM_IntegratedStateFmo(benchmark::State& state) {
  const DensityMatrix rho0 = fmo().initial_density();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_transport(fmo().system, rho0));
}
BENCHMARK(BM_IntegratedStateFmo);

void BM_IntegratedStateTree(benchmark::State& state) {
  const TransportSystem sys = tree(static_cast<int>(state.range(0)), 100.0).with_dephasing(10.0);
  TreeSpec spec;
  spec.generation = static_cast<int>(state.range(0));
  const DensityMatrix rho0 =
      initial_density_matrix(leaf_initial_state(spec, InitialState::Kind::Mixture), sys.n_sites());
  for (auto _ : state) benchmark::DoNotOptimize(integrated_state(sys, rho0));
}
BENCHMARK(BM_IntegratedStateTree)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_SchurPopulationsTree(benchmark::State& state) {
  const TransportSystem sys = tree(static_cast<int>(state.range(0)), 100.0);
  TreeSpec spec;
  spec.generation = static_cast<int>(state.range(0));
  const DensityMatrix rho0 =
      initial_density_matrix(leaf_initial_state(spec, InitialState::Kind::Mixture), sys.n_sites());
  const SchurIntegrals schur(sys, rho0);
  for (auto _ : state) benchmark::DoNotOptimize(schur.populations(10.0));
}
BENCHMARK(BM_SchurPopulationsTree)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_OptimalDephasingTree(benchmark::State& state) {
  const TransportSystem sys = tree(4, 100.0);
  TreeSpec spec;
  const DensityMatrix rho0 =
      initial_density_matrix(leaf_initial_state(spec, InitialState::Kind::Superposition), sys.n_sites());
  for (auto _ : state) benchmark::DoNotOptimize(optimal_dephasing(sys, rho0));
}
BENCHMARK(BM_OptimalDephasingTree)->Unit(benchmark::kMillisecond);

void BM_PropagateFmo(benchmark::State& state) {
  const DensityMatrix rho0 = fmo().initial_density();
  PropagationOptions opts;
  opts.n_samples = 51;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(fmo().system, rho0, 5.0, opts));
}
BENCHMARK(BM_PropagateFmo)->Unit(benchmark::kMillisecond);

void BM_FmoDephasingSweep(benchmark::State& state) {
  const auto grid = default_gamma_grid();
  for (auto _ : state) benchmark::DoNotOptimize(dephasing_sweep(fmo(), grid, 1));
}
BENCHMARK(BM_FmoDephasingSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
