#include <benchmark/benchmark.h>

#include <cmath>

#include "fjc/dynamics.hpp"
#include "fjc/sector_propagator.hpp"

namespace {

fjc::JcModel resonant_model(int j) {
  fjc::ModelParams p;
  p.j = j;
  p.g_x = p.g_y = 1.0;
  return fjc::JcModel::finite(p);
}

fjc::ComplexVector spread_state(const fjc::JcModel& m) {
  const fjc::Index n = m.basis().size();
  return fjc::ComplexVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void BM_SectorAdvance(benchmark::State& state) {
  const fjc::JcModel model = resonant_model(static_cast<int>(state.range(0)) / 2);
  fjc::SectorPropagator prop(model, spread_state(model), {0.0, false});
  for (auto _ : state) {
    prop.advance(0.01);
    benchmark::ClobberMemory();
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SectorAdvance)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_SectorObservables(benchmark::State& state) {
  const fjc::JcModel model = resonant_model(static_cast<int>(state.range(0)) / 2);
  fjc::SectorPropagator prop(model, spread_state(model));
  for (auto _ : state) {
    prop.advance(0.01);
    benchmark::DoNotOptimize(prop.expectations());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SectorObservables)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_ReducedRk4(benchmark::State& state) {
  const fjc::JcModel model = resonant_model(static_cast<int>(state.range(0)) / 2);
  const fjc::ReducedSystem sys(model, fjc::DetuningMode::exact_energy_difference);
  const fjc::ComplexRhs rhs = [&sys](double t, const fjc::ComplexVector& y, fjc::ComplexVector& dy) { sys(t, y, dy); };
  fjc::ComplexVector y = spread_state(model);
  double t = 0.0;
  for (auto _ : state) {
    fjc::rk4_step(rhs, t, 0.01, y);
    t += 0.01;
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ReducedRk4)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_SectorSetup(benchmark::State& state) {
  const fjc::JcModel model = resonant_model(static_cast<int>(state.range(0)) / 2);
  const fjc::ComplexVector psi = spread_state(model);
  for (auto _ : state) {
    fjc::SectorPropagator prop(model, psi, {0.0, false});
    benchmark::DoNotOptimize(prop.active_dimension());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SectorSetup)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
BENCHMARK_MAIN();
