#include <benchmark/benchmark.h>

#include "qpencil/chardet.hpp"
#include "qpencil/core.hpp"
#include "qpencil/inverse.hpp"
#include "qpencil/pluecker.hpp"
#include "qpencil/roots.hpp"

namespace {

using namespace qpencil;

// unit-scale distinct-regime fixture with a comfortably rich spectrum
Problem fixture_problem() {
  return make_problem(make_pencil(Cx(0.0), Cx(-1.0)),
                      {{{Cx(1.0), Cx(0.0), Cx(2.0), Cx(0.0)},
                        {Cx(0.0), Cx(1.0), Cx(0.0), Cx(0.0)}}});
}

void BM_DeltaMinor(benchmark::State& state) {
  const Problem p = fixture_problem();
  const Cx z{0.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(delta_minor(p, z));
}
BENCHMARK(BM_DeltaMinor);

void BM_DeltaDirect(benchmark::State& state) {
  const Problem p = fixture_problem();
  const Cx z{0.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(delta_direct(p, z));
}
BENCHMARK(BM_DeltaDirect);

void BM_DeltaDerivative(benchmark::State& state) {
  const Problem p = fixture_problem();
  const Cx z{0.3, 0.7};
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(delta_derivative(p, z, order));
}
BENCHMARK(BM_DeltaDerivative)->Arg(1)->Arg(4);

void BM_CountZeros(benchmark::State& state) {
  const Problem p = fixture_problem();
  const Evaluator f = [p](Cx z) { return delta_minor(p, z); };
  const ScaleFn scale = [p](Cx z) { return delta_scale(p, z); };
  const SearchRegion region = make_region(-1.0, 1.0, -10.0, 10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(count_zeros(f, region, {}, scale));
}
BENCHMARK(BM_CountZeros);

void BM_FindEigenvalues(benchmark::State& state) {
  const Problem p = fixture_problem();
  const SearchRegion region = make_region(-1.0, 1.0, -30.0, 30.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(find_eigenvalues(p, region));
}
BENCHMARK(BM_FindEigenvalues);

void BM_MinorsRoundTrip(benchmark::State& state) {
  const Problem p = fixture_problem();
  for (auto _ : state)
    benchmark::DoNotOptimize(reconstruct_bc(minors(p.bc)));
}
BENCHMARK(BM_MinorsRoundTrip);

void BM_RecoverFromSpectrum(benchmark::State& state) {
  const Problem p = fixture_problem();
  const Spectrum s =
      find_eigenvalues(p, make_region(-1.0, 1.0, -30.0, 30.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(recover_from_spectrum(p.pencil, s.eigenvalues));
}
BENCHMARK(BM_RecoverFromSpectrum);

}  // namespace

BENCHMARK_MAIN();
