#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "pvi/backlund.hpp"
#include "pvi/lax.hpp"
#include "pvi/numeric.hpp"

namespace {

using pvi::field::Polynomial;
using pvi::field::RationalFunction;
using pvi::field::Var;

const std::vector<Var> kVars = {Var::a1, Var::a2, Var::q, Var::p, Var::t};

void BM_GcdWithCommonFactor(benchmark::State& state) {
  std::mt19937_64 rng(17);
  const auto deg = unsigned(state.range(0));
  const Polynomial f = pvi::testing::random_polynomial(rng, kVars, deg, 6);
  const Polynomial g = pvi::testing::random_polynomial(rng, kVars, deg, 6);
  const Polynomial h = pvi::testing::random_polynomial(rng, kVars, deg, 6);
  const Polynomial a = f * g, b = f * h;
  for (auto _ : state) benchmark::DoNotOptimize(pvi::field::gcd(a, b));
}
BENCHMARK(BM_GcdWithCommonFactor)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RationalFunctionArithmetic(benchmark::State& state) {
  const auto x = pvi::field::parse("(q - t)/(p*q + a1) + a2/(q - 1)");
  const auto y = pvi::field::parse("p/(q*(q - t)) - a3*t/(p + a1)");
  for (auto _ : state) {
    auto s = x + y;
    auto m = x * y;
    benchmark::DoNotOptimize(s / m);
  }
}
BENCHMARK(BM_RationalFunctionArithmetic)->Unit(benchmark::kMicrosecond);

void BM_Derivation(benchmark::State& state) {
  const auto m = pvi::backlund::generator_map(pvi::weyl::Gen::r1);
  for (auto _ : state) benchmark::DoNotOptimize(pvi::hamiltonian::delta_derivation(m.p));
}
BENCHMARK(BM_Derivation)->Unit(benchmark::kMicrosecond);

void BM_ZeroCurvature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pvi::lax::zero_curvature_residual());
}
BENCHMARK(BM_ZeroCurvature)->Unit(benchmark::kMillisecond);

void BM_ComposeTranslation(benchmark::State& state) {
  const auto w = pvi::weyl::translation_word(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pvi::backlund::word_map(w));
}
BENCHMARK(BM_ComposeTranslation)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Integrate(benchmark::State& state) {
  using pvi::field::Rational;
  const auto pv = pvi::hamiltonian::ParamVec::alpha_from({Rational(1, 5), Rational(1, 10), Rational(1, 8), Rational(1, 40)});
  for (auto _ : state)
    benchmark::DoNotOptimize(pvi::numeric::integrate(pv, {2.0, {0.3, 0.2}, {-0.4, 0.1}}, 3.0, 1e-9));
}
BENCHMARK(BM_Integrate)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
