#include <benchmark/benchmark.h>

#include <clebsch/clebsch.hpp>

using namespace clebsch;

namespace {

const SystemPreset& preset(int which) {
  static const SystemPreset presets[] = {make_preset("kida"), make_preset("rattleback"),
                                         make_preset("heavy_top")};
  return presets[which];
}

// Preset index as the benchmark argument: 0 kida, 1 rattleback, 2 heavy_top.
void label(benchmark::State& state) { state.SetLabel(preset_names()[state.range(0)]); }

void BM_CollectiveGL4Step(benchmark::State& state) {
  const SystemPreset& p = preset(static_cast<int>(state.range(0)));
  const auto z0 = solve_initial_point(p.algebra, p.mu0, p.pinning, p.sign).point;
  const VectorField f = [&](const State& y) -> State {
    return anti_reduced_rhs(p.algebra, p.ham, PhasePoint::unpack(y), p.sign).packed();
  };
  IntegratorConfig cfg;
  cfg.dt = p.recommended_dt;
  State y = z0.packed();
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_implicit_rk(f, y, cfg).state);
  }
  label(state);
}
BENCHMARK(BM_CollectiveGL4Step)->DenseRange(0, 2);

void BM_LiePoissonRK4Step(benchmark::State& state) {
  const SystemPreset& p = preset(static_cast<int>(state.range(0)));
  const VectorField f = [&](const State& y) -> State { return lp_rhs(p.algebra, p.ham, y, p.sign); };
  const State y = p.mu0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_explicit_rk4(f, y, p.recommended_dt));
  }
  label(state);
}
BENCHMARK(BM_LiePoissonRK4Step)->DenseRange(0, 2);

void BM_MomentumMap(benchmark::State& state) {
  const SystemPreset& p = preset(static_cast<int>(state.range(0)));
  const auto z = solve_initial_point(p.algebra, p.mu0, p.pinning, p.sign).point;
  for (auto _ : state) {
    benchmark::DoNotOptimize(momentum_map(p.algebra, z, p.sign));
  }
  label(state);
}
BENCHMARK(BM_MomentumMap)->DenseRange(0, 2);

void BM_InitialPointSolve(benchmark::State& state) {
  const SystemPreset& p = preset(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_initial_point(p.algebra, p.mu0, p.pinning, p.sign));
  }
  label(state);
}
BENCHMARK(BM_InitialPointSolve)->DenseRange(0, 2);

}  // namespace
BENCHMARK_MAIN();
