#include <benchmark/benchmark.h>

#include <random>

#include "netequil/matrix.hpp"
#include "netequil/netmodel.hpp"
#include "netequil/oracle.hpp"

using namespace netequil;

namespace {

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(gen);
  return m;
}

Network random_network(std::size_t n, std::uint64_t seed) {
  Matrix w = random_matrix(n, seed);
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = 0;
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += w(i, j);
    for (std::size_t j = 0; j < n; ++j) w(i, j) *= 0.9 / s;
  }
  std::mt19937_64 gen(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector eps(n);
  for (double& e : eps) e = u(gen);
  return Network(w, std::vector<InteractionFunction>(n, InteractionFunction::bounded_identity(-1, 1)), eps);
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(a, b));
}

void BM_Enumerate(benchmark::State& state) {
  const Network net = random_network(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_equilibria(net));
}

void BM_EnumerateSerial(benchmark::State& state) {
  const Network net = random_network(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_equilibria_serial(net));
}

}  // namespace

BENCHMARK(BM_Multiply)->Arg(64)->Arg(256)->Arg(512)->UseRealTime();
BENCHMARK(BM_MultiplySerial)->Arg(64)->Arg(256)->Arg(512)->UseRealTime();
BENCHMARK(BM_Enumerate)->DenseRange(6, 10, 2)->UseRealTime();
BENCHMARK(BM_EnumerateSerial)->DenseRange(6, 10, 2)->UseRealTime();

BENCHMARK_MAIN();
