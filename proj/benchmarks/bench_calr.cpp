#include <benchmark/benchmark.h>

#include "calr/oracle.hpp"
#include "calr/solver.hpp"
#include "calr/spectrum.hpp"

using namespace calr;

namespace {

const ConfocalGeometry kThin(1.0, 0.5, 0.8);
const Dipole kDipole{EllipticPoint::make(0.88, 0.7), {1.0, 0.5}};

void BM_ModeTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mode_table(n, kThin));
}
BENCHMARK(BM_ModeTable)->Arg(64)->Arg(256);

void BM_Solve(benchmark::State& state) {
  const double delta = std::pow(10.0, -static_cast<double>(state.range(0)));
  const ShellConfig cfg(kThin, delta, adaptive_n_max(delta, kThin, 0.88));
  for (auto _ : state) benchmark::DoNotOptimize(solve(kDipole, cfg));
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(5)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_EnergyDirect(benchmark::State& state) {
  const double delta = std::pow(10.0, -static_cast<double>(state.range(0)));
  const Solution sol = solve(kDipole, ShellConfig(kThin, delta, adaptive_n_max(delta, kThin, 0.88)));
  for (auto _ : state) benchmark::DoNotOptimize(dissipated_power_direct(sol));
}
BENCHMARK(BM_EnergyDirect)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PotentialEval(benchmark::State& state) {
  const Solution sol = solve(kDipole, ShellConfig(kThin, 1e-6, adaptive_n_max(1e-6, kThin, 0.88)));
  double w = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_potential(sol, EllipticPoint::make(1.2, w)));
    w += 1e-3;
  }
}
BENCHMARK(BM_PotentialEval);

void BM_NystromAssembly(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto gi = sample_ellipse(1.0, 0.5, N);
  const auto ge = sample_ellipse(1.0, 0.8, N);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_block_np(gi, ge));
}
BENCHMARK(BM_NystromAssembly)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_NystromSpectrum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto m = assemble_block_np(sample_ellipse(1.0, 0.5, N), sample_ellipse(1.0, 0.8, N));
  const auto analytic = analytic_block_spectrum(kThin, 12);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_spectrum(m.matrix, 18, analytic));
}
BENCHMARK(BM_NystromSpectrum)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
