#include <benchmark/benchmark.h>

#include "flatsym/cohomology.hpp"
#include "flatsym/extended_moduli.hpp"

using namespace flatsym;

static void BM_ExpLog(benchmark::State &state) {
  Rng rng(1);
  const AlgebraVector a = random_algebra_vector(static_cast<int>(state.range(0)), rng, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(log_map(exp_map(a)));
}
BENCHMARK(BM_ExpLog)->Arg(2)->Arg(3);

static void BM_Dexp(benchmark::State &state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const AlgebraVector lam = random_algebra_vector(n, rng);
  const AlgebraVector z = random_algebra_vector(n, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(dexp_left(lam, z));
}
BENCHMARK(BM_Dexp)->Arg(2)->Arg(3);

static void BM_OmegaEval(benchmark::State &state) {
  Rng rng(3);
  const int genus = static_cast<int>(state.range(0));
  const RepPoint h = random_rep_point(2, genus, rng);
  const RepTangent x = random_rep_tangent(2, genus, rng);
  const RepTangent y = random_rep_tangent(2, genus, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(omega_eval(h, x, y));
}
BENCHMARK(BM_OmegaEval)->Arg(1)->Arg(2)->Arg(4);

static void BM_SigmaEval(benchmark::State &state) {
  Rng rng(4);
  const AlgebraVector lam = random_algebra_vector(2, rng);
  const AlgebraVector z1 = random_algebra_vector(2, rng);
  const AlgebraVector z2 = random_algebra_vector(2, rng);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sigma_eval(lam, z1, z2, order));
}
BENCHMARK(BM_SigmaEval)->Arg(8)->Arg(24);

static void BM_FoxDerivative(benchmark::State &state) {
  std::mt19937_64 rng(5);
  const Word w = random_word(rng, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fox_derivative(w, 1, 2));
}
BENCHMARK(BM_FoxDerivative)->Arg(10)->Arg(40);

static void BM_Summary(benchmark::State &state) {
  Rng rng(6);
  const RepPoint h = random_rep_point(static_cast<int>(state.range(0)), 2, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(summary(h));
}
BENCHMARK(BM_Summary)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
