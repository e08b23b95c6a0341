#include <benchmark/benchmark.h>

#include "hemato/dde.hpp"
#include "hemato/equilibria.hpp"
#include "hemato/linearization.hpp"
#include "hemato/stability_switch.hpp"
#include "hemato/trajectory_analysis.hpp"

using namespace hemato;

static void BM_TauMax(benchmark::State& state) {
  const auto p = reference_params();
  for (auto _ : state) benchmark::DoNotOptimize(tau_max(p));
}
BENCHMARK(BM_TauMax);

static void BM_PositiveEquilibrium(benchmark::State& state) {
  const auto p = reference_params();
  double tau = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(positive_equilibrium(p, tau));
    tau = tau < 2.9 ? tau + 0.01 : 0.0;
  }
}
BENCHMARK(BM_PositiveEquilibrium);

static void BM_CharCoeffs(benchmark::State& state) {
  const auto p = reference_params();
  const auto eq = *positive_equilibrium(p, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(char_coeffs(linearize(p, eq, 1.4), p.mu, p.k));
}
BENCHMARK(BM_CharCoeffs);

static void BM_Scan(benchmark::State& state) {
  const auto p = reference_params();
  const double step = 1.0 / static_cast<double>(state.range(0));
  const auto grid = make_tau_grid(*tau_max(p), step);
  for (auto _ : state) benchmark::DoNotOptimize(scan(p, grid, 1));
  state.counters["grid_points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_Scan)->Arg(100)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Integrate(benchmark::State& state) {
  const double tau = 1.4;
  const auto p = reference_params(tau);
  const auto eq = *positive_equilibrium(p, tau);
  const auto hist = History::constant(1.1 * eq.state);
  const double cap = tau / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p, hist, 1200.0, {cap}));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(1200.0 / cap));
}
BENCHMARK(BM_Integrate)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  const double tau = 2.8;
  const auto p = reference_params(tau);
  const auto eq = *positive_equilibrium(p, tau);
  const auto traj = integrate(p, History::constant(1.1 * eq.state), 2500.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_asymptotics(traj, eq, 800.0));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
