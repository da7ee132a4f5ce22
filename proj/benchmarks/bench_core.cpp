#include <benchmark/benchmark.h>

#include "bsent/verifier.hpp"

using namespace bsent;

static void BM_BeamSplitterOutput(benchmark::State& state) {
  const PureState psi = make_random_pure(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(beam_splitter_output(psi, Transmission(0.3)));
}
BENCHMARK(BM_BeamSplitterOutput)->RangeMultiplier(2)->Range(8, 64);

static void BM_LossApply(benchmark::State& state) {
  const DensityMatrix rho = make_random_mixed(static_cast<int>(state.range(0)), 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(loss_apply(rho, Transmission(0.3)));
}
BENCHMARK(BM_LossApply)->RangeMultiplier(2)->Range(8, 64);

static void BM_VonNeumannEntropy(benchmark::State& state) {
  const DensityMatrix rho = lossy_state(make_random_pure(static_cast<int>(state.range(0)), 3), Transmission(0.4));
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(DensityMatrix::from_matrix(rho.matrix())));
}
BENCHMARK(BM_VonNeumannEntropy)->RangeMultiplier(2)->Range(8, 64);

static void BM_GConcurrence(benchmark::State& state) {
  const PureState psi = make_random_pure(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(g_concurrence(beam_splitter_output(psi, Transmission(0.4))));
}
BENCHMARK(BM_GConcurrence)->RangeMultiplier(2)->Range(8, 64);

static void BM_GradedSingularValues(benchmark::State& state) {
  const PureState psi = make_random_pure(static_cast<int>(state.range(0)), 5);
  const SchmidtMatrix m = beam_splitter_output(psi, Transmission(0.4));
  for (auto _ : state) benchmark::DoNotOptimize(log_schmidt_product(m, psi.max_occupied()));
}
BENCHMARK(BM_GradedSingularValues)->RangeMultiplier(2)->Range(8, 32);

static void BM_EntropyDerivativeIdentity(benchmark::State& state) {
  const PureState psi = make_random_pure(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_derivative_identity(psi, Transmission(0.4)));
}
BENCHMARK(BM_EntropyDerivativeIdentity)->Arg(8)->Arg(16);

static void BM_OverlapCoefficients(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix x = make_random_mixed(d, d, 7);
  const DensityMatrix y = make_random_mixed(d, d, 8);
  for (auto _ : state) benchmark::DoNotOptimize(overlap_coefficients(x, y));
}
BENCHMARK(BM_OverlapCoefficients)->RangeMultiplier(2)->Range(4, 32);

static void BM_SweepDefaultGrid(benchmark::State& state) {
  const LabeledState s{"fock:6", make_fock(6, 7)};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(s, MonotoneKind::renyi(12)));
}
BENCHMARK(BM_SweepDefaultGrid);

static void BM_Counterexample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_counterexample());
}
BENCHMARK(BM_Counterexample)->Unit(benchmark::kMillisecond);

static void BM_QuickSuite(benchmark::State& state) {
  SuiteOptions o;
  o.kind = SuiteKind::quick;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(o));
}
BENCHMARK(BM_QuickSuite)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
