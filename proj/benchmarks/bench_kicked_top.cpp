#include <benchmark/benchmark.h>

#include "qkt/entanglement.hpp"
#include "qkt/open_system.hpp"
#include "qkt/quantum_top.hpp"

using namespace qkt;

namespace {

TopParams top_for(int twice_j) {
  TopParams t;
  t.spin = SpinQuantum::from_twice_j(twice_j);
  return t;
}

void BM_FloquetOperator(benchmark::State& state) {
  const auto top = top_for(static_cast<int>(state.range(0)));
  const auto ops = build_operators(top.spin);
  for (auto _ : state) benchmark::DoNotOptimize(floquet_operator(top, ops).u.data());
}
BENCHMARK(BM_FloquetOperator)->Arg(8)->Arg(40)->Arg(100);

void BM_FloquetSpectrum(benchmark::State& state) {
  const auto top = top_for(static_cast<int>(state.range(0)));
  const auto f = floquet_operator(top);
  for (auto _ : state) benchmark::DoNotOptimize(floquet_spectrum(f).omegas.data());
}
BENCHMARK(BM_FloquetSpectrum)->Arg(8)->Arg(40)->Arg(100);

void BM_EntanglementSeries600(benchmark::State& state) {
  const auto top = top_for(8);
  const auto ops = build_operators(top.spin);
  const auto f = floquet_operator(top, ops);
  const auto psi0 = coherent_state(ops, {2.25, 1.1});
  for (auto _ : state) {
    double acc = 0;
    for (const auto& psi : evolve(psi0, f, 600)) {
      acc += linear_entropy(mean_spin(psi, ops), top.spin) + negativity(psi, top.spin);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_EntanglementSeries600)->Unit(benchmark::kMillisecond);

void BM_LindbladIntervalExp(benchmark::State& state) {
  const auto top = top_for(8);
  const auto ops = build_operators(top.spin);
  const auto gen =
      lindblad_superoperator(twist_hamiltonian(ops, top), make_jump_set(DecoherenceParams::from_beta(top), ops));
  for (auto _ : state) benchmark::DoNotOptimize(IntervalPropagator(gen, top.tau).channel().matrix.data());
}
BENCHMARK(BM_LindbladIntervalExp)->Unit(benchmark::kMillisecond);

void BM_OpenKicks200(benchmark::State& state) {
  const auto top = top_for(8);
  const auto ops = build_operators(top.spin);
  const auto rho0 = DensityMatrix::pure(coherent_state(ops, {2.25, 1.1}));
  const auto dec = DecoherenceParams::from_beta(top);
  for (auto _ : state) benchmark::DoNotOptimize(open_kicked_top(rho0, top, dec, 200).size());
}
BENCHMARK(BM_OpenKicks200)->Unit(benchmark::kMillisecond);

void BM_HusimiGrid(benchmark::State& state) {
  const auto top = top_for(8);
  const auto ops = build_operators(top.spin);
  const auto psi = coherent_state(ops, {2.25, 2.5});
  for (auto _ : state) benchmark::DoNotOptimize(husimi(psi, ops).values.data());
}
BENCHMARK(BM_HusimiGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
