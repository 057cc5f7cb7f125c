#include <benchmark/benchmark.h>

#include "oseen/grid.hpp"
#include "oseen/linalg.hpp"
#include "oseen/multiplier.hpp"
#include "oseen/operators.hpp"
#include "oseen/resolvent.hpp"

namespace {

using namespace oseen;

void BM_AssembleHalfLine(benchmark::State& state) {
  const RadialGrid rg = make_radial_grid(make_log_grid(-12.0, 3.0, static_cast<int>(state.range(0))));
  const ModeParams mp = ModeParams::make(1e4, 84, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_half_line(mp, rg, true));
}
BENCHMARK(BM_AssembleHalfLine)->Arg(301)->Arg(601)->Unit(benchmark::kMillisecond);

void BM_AssembleLogLine(benchmark::State& state) {
  const LogGrid grid = make_log_grid(-12.0, 3.0, static_cast<int>(state.range(0)));
  const ModeParams mp = ModeParams::make(1e4, 84, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_log_line(mp, grid, LogVariant::FullTilde, true));
}
BENCHMARK(BM_AssembleLogLine)->Arg(301)->Arg(601)->Unit(benchmark::kMillisecond);

void BM_SigmaMin(benchmark::State& state) {
  const LogGrid grid = make_log_grid(-12.0, 3.0, static_cast<int>(state.range(0)));
  const OperatorMatrix op = mode_operator(1e4, 84, grid, {});
  const auto method = state.range(1) ? SvdMethod::Dense : SvdMethod::Lanczos;
  const cplx z(0.0, 0.05 * ModeParams::make(1e4, 84, 0.0).beta_k);
  for (auto _ : state) benchmark::DoNotOptimize(smallest_singular_value(op, z, method));
}
BENCHMARK(BM_SigmaMin)->Args({301, 0})->Args({601, 0})->Args({301, 1})->Unit(benchmark::kMillisecond);

void BM_FourierMultiplier(benchmark::State& state) {
  const LogGrid grid = make_log_grid(-12.0, 3.0, static_cast<int>(state.range(0)));
  CVec u = CVec::Ones(grid.interior_size());
  const Symbol m = [](double tau) { return cplx(1.0 / (1.0 + tau * tau), 0.0); };
  for (auto _ : state) benchmark::DoNotOptimize(apply_fourier_multiplier(m, u, grid));
}
BENCHMARK(BM_FourierMultiplier)->Arg(601)->Arg(4001);

void BM_CoercivityCase1(benchmark::State& state) {
  const ModeParams mp = ModeParams::from_nu(1e4, 84, 0.05);
  MultiplierSpec spec = MultiplierSpec::for_mode(mp);
  spec.constant_shift = 4.0;
  const LogGrid grid = coercivity_grid(mp);
  for (auto _ : state) benchmark::DoNotOptimize(coercivity_check(mp, spec, grid, true, false));
}
BENCHMARK(BM_CoercivityCase1)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
