#include <benchmark/benchmark.h>

#include <random>

#include "cdft/em_analog.hpp"
#include "cdft/fock.hpp"
#include "cdft/grassmann.hpp"
#include "cdft/observables.hpp"

using namespace cdft;

static void BM_Synthesize(benchmark::State& state) {
  const Lattice l(static_cast<int>(state.range(0)), 16.0, {});
  std::mt19937_64 rng(1);
  const ModeAmplitudes m = random_modes(l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(l, m, 0.5));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(l.sites()));
}
BENCHMARK(BM_Synthesize)->Arg(16)->Arg(32)->Arg(64);

static void BM_Decompose(benchmark::State& state) {
  const Lattice l(static_cast<int>(state.range(0)), 16.0, {});
  std::mt19937_64 rng(2);
  const FieldState f = synthesize(l, random_modes(l, rng), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f));
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(32);

static void BM_ObserveSpatial(benchmark::State& state) {
  const Lattice l(16, 16.0, {});
  std::mt19937_64 rng(3);
  const ModeAmplitudes m = random_modes(l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(observe_spatial(l, m, 0.1));
}
BENCHMARK(BM_ObserveSpatial);

static void BM_ContinuityRevised(benchmark::State& state) {
  const Lattice l(16, 16.0, {});
  std::mt19937_64 rng(4);
  const ModeAmplitudes m = random_modes(l, rng, ModeBand::dealiased);
  for (auto _ : state) {
    const RevisedCurrents rc = four_current_revised(split_modes(l, m, 0.2));
    benchmark::DoNotOptimize(continuity_residual(l, rc.electron, m, 0.2));
    benchmark::DoNotOptimize(continuity_residual(l, rc.positron, m, 0.2));
  }
}
BENCHMARK(BM_ContinuityRevised);

static void BM_PhiEnergies(benchmark::State& state) {
  const Lattice l(16, 16.0, {});
  std::mt19937_64 rng(5);
  const EMState s = random_free_em(l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(em_energies(s));
}
BENCHMARK(BM_PhiEnergies);

static void BM_FockHamiltonianViaSwap(benchmark::State& state) {
  const int half = static_cast<int>(state.range(0));
  const FockSpace s(uniform_spec(half, half));
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_via_swap(s));
}
BENCHMARK(BM_FockHamiltonianViaSwap)->Arg(2)->Arg(4)->Arg(6);

static void BM_GrassmannMultiply(benchmark::State& state) {
  const int pairs = 8;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << (2 * pairs)) - 1);
  GrassmannElement a(pairs), b(pairs);
  for (int i = 0; i < state.range(0); ++i) {
    a.add(mask(rng), 1.0);
    b.add(mask(rng), cplx(0.0, 1.0));
  }
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GrassmannMultiply)->Arg(16)->Arg(128);
BENCHMARK_MAIN();
