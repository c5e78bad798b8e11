#include "pinch/certify.hpp"
#include "pinch/curvature.hpp"
#include "pinch/quotient.hpp"
#include "pinch/solvgroup.hpp"
#include "pinch/spectra.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace pinch;

BlockGenerator generator(int n) {
  return assemble_generator(roots_closed_form(PolySpec::for_dimension(n)));
}

void BM_Charpoly(benchmark::State& state) {
  const IntMatrix t = companion_matrix(build_polynomial(PolySpec::for_dimension(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(charpoly_exact(t));
}
BENCHMARK(BM_Charpoly)->Arg(8)->Arg(16)->Arg(32);

void BM_AberthRoots(benchmark::State& state) {
  const IntPoly p = build_polynomial(PolySpec::for_dimension(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(roots_iterative(p));
}
BENCHMARK(BM_AberthRoots)->Arg(8)->Arg(16)->Arg(32);

void BM_ExpClosed(benchmark::State& state) {
  const BlockGenerator a = generator(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exp_tA_closed(a, 0.73));
}
BENCHMARK(BM_ExpClosed)->Arg(4)->Arg(12);

void BM_ExpGeneric(benchmark::State& state) {
  const Mat m = 0.73 * generator(static_cast<int>(state.range(0))).dense();
  for (auto _ : state) benchmark::DoNotOptimize(exp_generic(m));
}
BENCHMARK(BM_ExpGeneric)->Arg(4)->Arg(12);

void BM_CurvatureNumerator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CurvatureModel model(generator(n));
  const Vec x = Vec::LinSpaced(n + 1, -1.0, 1.0), y = Vec::LinSpaced(n + 1, 2.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(model.numerator(x.data(), y.data()));
}
BENCHMARK(BM_CurvatureNumerator)->Arg(4)->Arg(16)->Arg(64);

void BM_CurvatureMaximizer(benchmark::State& state) {
  const BlockGenerator a = generator(static_cast<int>(state.range(0))).diagonal_part();
  for (auto _ : state) benchmark::DoNotOptimize(max_abs_curvature(a, 256, 1));
}
BENCHMARK(BM_CurvatureMaximizer)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SampledDiameter(benchmark::State& state) {
  const Spectrum s = roots_closed_form(PolySpec::for_dimension(2));
  const IntMatrix t = companion_matrix(build_polynomial(PolySpec::for_dimension(2)));
  const LatticeData l = conjugator(t, s).refined(4);
  const BlockGenerator a = assemble_generator(s);
  for (auto _ : state) benchmark::DoNotOptimize(sampled_diameter(l, a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SampledDiameter)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  CertifyOptions o;
  o.budget = 1024;
  for (auto _ : state) benchmark::DoNotOptimize(certify_dimension(static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_Certify)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
