#include <benchmark/benchmark.h>

#include "pdmdirac/dirac.hpp"
#include "pdmdirac/model.hpp"
#include "pdmdirac/spectral.hpp"

using namespace pdm;

static void BM_EigenLowest(benchmark::State& state) {
  const auto gp = model::build(model::constant_mass(0.5, 1.0)).gp;
  const auto op = spectral::discretize(gp, 1.0, {-20.0, 20.0}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::eigen_lowest(op, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigenLowest)->Arg(1000)->Arg(2000)->Arg(4000)->Arg(8000)->Arg(16000)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_Discretize(benchmark::State& state) {
  const auto gp = model::build(model::bounded_local()).gp;
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::discretize(gp, 0.5, {-3.5, 3.5}, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Discretize)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_SpectralOracle(benchmark::State& state) {
  const auto gp = model::build(model::constant_mass(0.5, 2.0)).gp;
  for (auto _ : state) benchmark::DoNotOptimize(spectral::verify_algebraic_spectrum(gp, 2.0, {-20.0, 20.0}, 4000, 2e-3));
}
BENCHMARK(BM_SpectralOracle)->Unit(benchmark::kMillisecond);

static void BM_LadderChain(benchmark::State& state) {
  const auto mb = model::build(model::bounded_local());
  for (auto _ : state) {
    auto st = algebra::ground_state(mb.gp, 0.5, mb.grid, true);
    for (int n = 0; n < state.range(0); ++n) st = algebra::ladder_apply(+1, st, mb.gp);
    benchmark::DoNotOptimize(st.chi.value(0));
  }
}
BENCHMARK(BM_LadderChain)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_EigenSpinor(benchmark::State& state) {
  const auto mb = model::build(model::bounded_local(1.0, 2.0));
  const auto ground = algebra::ground_state(mb.gp, 0.5, mb.grid, true);
  for (auto _ : state) benchmark::DoNotOptimize(dirac::build_eigen_spinor(ground, mb.gp, 2.0, +1));
}
BENCHMARK(BM_EigenSpinor)->Unit(benchmark::kMillisecond);

static void BM_Integrate(benchmark::State& state) {
  const ScalarProfile f = profile::sech(profile::identity()) * profile::cos(profile::identity());
  for (auto _ : state) benchmark::DoNotOptimize(integrate(f, -20.0, 20.0));
}
BENCHMARK(BM_Integrate);

BENCHMARK_MAIN();
