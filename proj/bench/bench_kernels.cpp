// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "tamegal/gmod.hpp"
#include "tamegal/kernels.hpp"
#include "tamegal/mixed.hpp"

using namespace tamegal;

namespace {

Matrix random_matrix(std::size_t n, std::uint32_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix m(n, n, p);
  for (auto& x : m.data()) x = static_cast<std::uint32_t>(rng() % p);
  return m;
}

void BM_Multiply(benchmark::State& state, bool parallel) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, 3, 1), b = random_matrix(n, 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? kernels::multiply(a, b) : kernels::multiply_serial(a, b));
}

void BM_RowReduce(benchmark::State& state, bool parallel) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, 3, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? kernels::row_reduce(a) : kernels::row_reduce_serial(a));
}

// Hom(l(0)^2 + l(1), l(0)^2 + l(3)) for p = 2, e = 7, f = 3: 2^12 maps, none invertible.
void BM_ExhaustiveInvertible(benchmark::State& state, bool parallel) {
  const auto g = TameGroup::over(FieldTower::make(2, 1, 3), 7);
  const std::vector<FpGModule> src{char_module(g, 0), char_module(g, 0), char_module(g, 1)};
  const std::vector<FpGModule> dst{char_module(g, 0), char_module(g, 0), char_module(g, 3)};
  const auto basis = hom_basis(direct_sum(src), direct_sum(dst));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_invertible(basis, parallel));
}

void BM_EnumerationOracle(benchmark::State& state, bool parallel) {
  const auto F = mixed::make_mixed_field(3, 1, mixed::parse_eisenstein("+3"), 2, 2);
  const auto M = mixed::mixed_unit_module(F);
  for (auto _ : state) benchmark::DoNotOptimize(mixed::enumeration_oracle(F, M, 100000, parallel));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Multiply, serial, false)->Arg(64)->Arg(192);
BENCHMARK_CAPTURE(BM_Multiply, openmp, true)->Arg(64)->Arg(192);
BENCHMARK_CAPTURE(BM_RowReduce, serial, false)->Arg(64)->Arg(192);
BENCHMARK_CAPTURE(BM_RowReduce, openmp, true)->Arg(64)->Arg(192);
BENCHMARK_CAPTURE(BM_ExhaustiveInvertible, serial, false);
BENCHMARK_CAPTURE(BM_ExhaustiveInvertible, openmp, true);
BENCHMARK_CAPTURE(BM_EnumerationOracle, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerationOracle, openmp, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
