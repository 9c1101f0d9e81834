#include <random>

#include <benchmark/benchmark.h>

#include "galab/invertibility.hpp"
#include "galab/lab.hpp"
#include "galab/operators.hpp"
#include "galab/weight.hpp"

using namespace galab;

namespace {

AlgebraElement random_element(const GroupSpec& g, int radius, int terms, unsigned seed) {
  std::mt19937_64 rng(seed);
  const Window ball = g.ball(radius);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  AlgebraElement f(g);
  for (int i = 0; i < terms; ++i) f.add_term(ball[pick(rng)], Complex(v(rng), v(rng)));
  return f;
}

void BM_ConvolveLattice(benchmark::State& s) {
  const GroupSpec g = GroupSpec::lattice(2);
  const int terms = static_cast<int>(s.range(0));
  const AlgebraElement a = random_element(g, 8, terms, 1), b = random_element(g, 8, terms, 2);
  for (auto _ : s) benchmark::DoNotOptimize(convolve(a, b));
  s.SetComplexityN(terms);
}
BENCHMARK(BM_ConvolveLattice)->RangeMultiplier(4)->Range(8, 256)->Complexity();

void BM_ConvolveFree(benchmark::State& s) {
  const GroupSpec g = GroupSpec::free(2);
  const AlgebraElement a = random_element(g, 4, static_cast<int>(s.range(0)), 3);
  const AlgebraElement b = random_element(g, 4, static_cast<int>(s.range(0)), 4);
  for (auto _ : s) benchmark::DoNotOptimize(convolve(a, b));
}
BENCHMARK(BM_ConvolveFree)->RangeMultiplier(4)->Range(8, 128);

void BM_AssembleMatrix(benchmark::State& s) {
  const GroupSpec g = GroupSpec::lattice(2);
  const AlgebraElement f = random_element(g, 2, 8, 5);
  const Window w = g.ball(static_cast<int>(s.range(0)));
  const Weight omega = Weight::polynomial(g, 1.0);
  for (auto _ : s) benchmark::DoNotOptimize(assemble_matrix(f, w, &omega));
}
BENCHMARK(BM_AssembleMatrix)->Arg(4)->Arg(8)->Arg(16);

void BM_WienerGrid(benchmark::State& s) {
  const GroupSpec g = GroupSpec::lattice(1);
  AlgebraElement f(g);
  f.add_term({0}, 2.0).add_term({1}, 1.0).add_term({-3}, 0.25);
  WienerOptions o;
  o.grid = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(wiener_certify(f, o));
}
BENCHMARK(BM_WienerGrid)->RangeMultiplier(8)->Range(64, 1 << 15);

void BM_FftInverse(benchmark::State& s) {
  const GroupSpec g = GroupSpec::lattice(2);
  AlgebraElement f(g);
  f.add_term({0, 0}, 4.0).add_term({1, 0}, 1.0).add_term({0, -1}, 1.0);
  for (auto _ : s) benchmark::DoNotOptimize(invert_via_fft(f, static_cast<int>(s.range(0))));
}
BENCHMARK(BM_FftInverse)->Arg(32)->Arg(64)->Arg(128);

void BM_Neumann(benchmark::State& s) {
  const GroupSpec g = GroupSpec::lattice(1);
  const Weight w = Weight::exp_symmetric(g, 2.0);
  AlgebraElement f(g);
  f.add_term({0}, 1.0).add_term({1}, -0.25);
  NeumannOptions o;
  o.pivot = Element{0};
  o.terms = static_cast<int>(s.range(0));
  o.tol = 1.0;
  for (auto _ : s) benchmark::DoNotOptimize(neumann_invert(f, &w, o));
}
BENCHMARK(BM_Neumann)->Arg(10)->Arg(40)->Arg(160);

void BM_ProbeQuotients(benchmark::State& s) {
  const GroupSpec g = GroupSpec::lattice(1);
  AlgebraElement f(g);
  f.add_term({0}, 1.0).add_term({1}, -1.0);
  const auto moduli = diagonal_moduli(1, 2, s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(probe_quotients(f, moduli));
}
BENCHMARK(BM_ProbeQuotients)->Arg(16)->Arg(64);

void BM_ScenarioLp(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(lp_findings(static_cast<int>(s.range(0))));
}
BENCHMARK(BM_ScenarioLp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
