#include <benchmark/benchmark.h>

#include "webcurv/foliation.hpp"
#include "webcurv/numeric.hpp"
#include "webcurv/parse.hpp"
#include "webcurv/roots.hpp"

using namespace webcurv;

namespace {

MPoly poly(const std::string& s) { return parse_polynomial(s); }

void BM_Multiply(benchmark::State& state) {
  const MPoly a = poly("(3*x^2*y - 7*y^3 + 11*x + 5/2)^4");
  const MPoly b = poly("(x*y - 2*x^3 + y - 1)^4");
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Unit(benchmark::kMicrosecond);

void BM_MultivariateGcd(benchmark::State& state) {
  const MPoly c = poly("(3*x^2*y - 7*y^3 + 11)^3*(x - 3)^2");
  const MPoly f = c * poly("(x*y - 5/2)^2 + z");
  const MPoly g = c * poly("x^4 - y*z + 1");
  for (auto _ : state) benchmark::DoNotOptimize(gcd(f, g));
}
BENCHMARK(BM_MultivariateGcd)->Unit(benchmark::kMillisecond);

void BM_NumericRoots(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::string s = "z^" + std::to_string(n);
  for (unsigned k = 1; k < n; ++k) s += " + " + std::to_string(k % 7 + 1) + "*z^" + std::to_string(k);
  const UPoly f = UPoly::from_mpoly(poly(s + " - 3"), "z");
  RootOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(numeric_roots(f, opt));
}
BENCHMARK(BM_NumericRoots)->Arg(12)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Theorem3SumAtZero(benchmark::State& state) {
  const HomogeneousFoliation h = associated_foliation(klein_map(4));
  for (auto _ : state) benchmark::DoNotOptimize(theorem3_sum(h, PValue::of(Frac())));
}
BENCHMARK(BM_Theorem3SumAtZero)->Unit(benchmark::kMillisecond);

void BM_FlatnessIcosahedral(benchmark::State& state) {
  const HomogeneousFoliation h = associated_foliation(klein_map(5));
  for (auto _ : state) benchmark::DoNotOptimize(flatness_decision(h));
}
BENCHMARK(BM_FlatnessIcosahedral)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
