#include <benchmark/benchmark.h>

#include "memsim/engine.hpp"
#include "memsim/fitting.hpp"

using namespace memsim;

namespace {

// One period at 1e4 steps per model, drive levels that switch the state.
void BM_Simulate(benchmark::State& state) {
  const auto which = state.range(0);
  const bool rk4 = state.range(1) != 0;
  ModelParams params;
  double x0 = 0.0;
  Waveform drive = Waveform::sine(1.0, 1.0);
  switch (which) {
    case 0:
      params = LinearDriftParams{};
      x0 = 3e-9;
      drive = Waveform::sine(1e-4, 1.0);
      break;
    case 1:
      params = NonlinearDriftParams{};
      x0 = 0.5;
      break;
    case 2:
      params = SimmonsParams{};
      x0 = 1.5e-9;
      drive = Waveform::sine(2e-4, 1.0);
      break;
    case 3: {
      TeamParams p;
      p.k_off = 2e-9;
      p.k_on = -2e-9;
      params = p;
      x0 = 0.5e-9;
      drive = Waveform::sine(3e-4, 1.0);
      break;
    }
    default: {
      VteamParams p;
      p.k_off = 1e-9;
      p.k_on = -1e-9;
      params = p;
      x0 = 0.5e-9;
    }
  }
  const ModelInstance m(params, x0);
  SimConfig cfg{0.0, 1.0, 1e-4, rk4 ? Integrator::rk4 : Integrator::euler};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(m, drive, cfg));
  state.SetLabel(std::string(model_name(params)) + (rk4 ? "/rk4" : "/euler"));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.point_count()));
}
BENCHMARK(BM_Simulate)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}})->Unit(benchmark::kMicrosecond);

// Cost of one fit objective evaluation on the drift reference.
void BM_FitObjective(benchmark::State& state) {
  const LinearDriftParams lp;
  const SimConfig cfg{0.0, 2.0, 1e-3};
  fitting::FitProblem p;
  p.reference = simulate(ModelInstance(lp, 3e-9), Waveform::sine(1e-4, 1.0), cfg);
  p.drive = fitting::voltage_drive_from(p.reference);
  p.cfg = cfg;
  p.reversed_polarity = true;
  p.initial_state = 0.7e-8;
  VteamParams v;
  v.alpha_off = v.alpha_on = 1;
  v.x_off = 1e-8;
  v.r_on = 6000;
  v.r_off = 14000;
  v.v_off = 0.01;
  v.v_on = -0.04;
  v.k_off = 3e-10;
  v.k_on = -1e-9;
  for (auto _ : state)
    benchmark::DoNotOptimize(fitting::relative_rms(fitting::simulate_candidate(p, v), p.reference));
}
BENCHMARK(BM_FitObjective)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
