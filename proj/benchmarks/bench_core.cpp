#include <benchmark/benchmark.h>

#include <optional>

#include <qent/bell_analyzer.hpp>
#include <qent/gamma_sup.hpp>
#include <qent/local_unitary.hpp>
#include <qent/phase_povm.hpp>
#include <qent/rng.hpp>
#include <qent/states.hpp>

namespace {

qent::DensityMatrix bench_state() {
  return qent::random_mixed(qent::RngSeed{7}, 4);
}

void BM_GammaClosedForm(benchmark::State& state) {
  const qent::DensityMatrix rho = bench_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qent::gamma_closed_form(rho));
  }
}
BENCHMARK(BM_GammaClosedForm);

void BM_JointPhaseDistribution(benchmark::State& state) {
  const qent::DensityMatrix rho = bench_state();
  const int n = static_cast<int>(state.range(0));
  const qent::PhaseGrid grid(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qent::joint_phase_distribution(rho, grid, 1.0));
  }
}
BENCHMARK(BM_JointPhaseDistribution)->Arg(4)->Arg(16)->Arg(64);

void BM_GaugeEvaluation(benchmark::State& state) {
  const qent::DensityMatrix rho = bench_state();
  const qent::LocalUnitaryParams params{0.3, 0.8, 1.1, 2.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qent::gamma_at(rho, params));
  }
}
BENCHMARK(BM_GaugeEvaluation);

void BM_CoordinateAscent(benchmark::State& state) {
  const qent::DensityMatrix rho = qent::horodecki_state(0.6, 0.3);
  qent::OptimizerConfig cfg;
  cfg.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qent::coordinate_ascent(rho, cfg).value);
  }
}
BENCHMARK(BM_CoordinateAscent)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  const qent::DensityMatrix rho = bench_state();
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qent::brute_force_oracle(rho, resolution));
  }
}
BENCHMARK(BM_BruteForceOracle)->Arg(8)->Arg(16)->Arg(24)
    ->Unit(benchmark::kMillisecond);

void BM_NoiselessProtocol(benchmark::State& state) {
  const qent::DensityMatrix rho = qent::werner_state(0.7);
  qent::OptimizerConfig cfg;
  cfg.restarts = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qent::protocol_gamma_sup(rho, cfg, std::nullopt, cfg.seed)
            .gamma_sup_estimate);
  }
}
BENCHMARK(BM_NoiselessProtocol)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
