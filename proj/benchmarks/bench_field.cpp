#include <benchmark/benchmark.h>

#include <random>

#include "bt/action.hpp"

using namespace bt;

namespace {

FieldElem sample(const FieldConfigPtr& cfg, std::mt19937_64& rng) {
  return random_torus_unit(cfg, RTilde(Rational(0)), rng, cfg->precision);
}

void BM_FieldMultiply(benchmark::State& state) {
  auto cfg = make_field(5, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::mt19937_64 rng(1);
  FieldElem a = sample(cfg, rng), b = sample(cfg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_FieldMultiply)->Args({12, 1})->Args({24, 1})->Args({12, 2})->Args({48, 1});

void BM_FieldInverse(benchmark::State& state) {
  auto cfg = make_field(5, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::mt19937_64 rng(2);
  FieldElem a = sample(cfg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_FieldInverse)->Args({12, 1})->Args({24, 1})->Args({12, 2});

void BM_Norm(benchmark::State& state) {
  auto cfg = make_field(5, 12, 2);
  std::mt19937_64 rng(3);
  FieldElem a = sample(cfg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(norm(a));
}
BENCHMARK(BM_Norm);

}  // namespace
