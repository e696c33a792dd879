#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "teneig/generators.hpp"
#include "teneig/tensor.hpp"

namespace {

using teneig::DenseTensor;
using teneig::Vector;

DenseTensor random_tensor(int m, int n, teneig::Symmetry s) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e(teneig::checked_entry_count(m, n));
  for (double& v : e) v = u(rng);
  DenseTensor a(m, n, std::move(e));
  return s == teneig::Symmetry::general ? a : teneig::semi_symmetrize(a);
}

Vector point(int n) {
  return Vector::LinSpaced(n, 0.5, 1.5).normalized();
}

void BM_apply_reference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = random_tensor(3, n, teneig::Symmetry::general);
  const Vector x = point(n);
  for (auto _ : state) benchmark::DoNotOptimize(teneig::reference::apply(a, x));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.size()));
}

void BM_apply_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = random_tensor(3, n, teneig::Symmetry::general);
  const Vector x = point(n);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(teneig::apply(a, x));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.size()));
}

void BM_derivative_reference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = random_tensor(3, n, teneig::Symmetry::general);
  const Vector x = point(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(teneig::reference::derivative(a, x));
  }
}

void BM_derivative_parallel_general(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = random_tensor(3, n, teneig::Symmetry::general);
  const Vector x = point(n);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(teneig::derivative(a, x));
}

void BM_linearize_parallel_semi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseTensor a = random_tensor(3, n, teneig::Symmetry::semi_symmetric);
  const Vector x = point(n);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(teneig::apply_and_derivative(a, x));
  }
}

void BM_laplacian_apply(benchmark::State& state) {
  const DenseTensor a = teneig::gen_signless_laplacian(3, 100);
  const Vector x = point(100);
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(teneig::apply(a, x));
}

}  // namespace

BENCHMARK(BM_apply_reference)->Arg(20)->Arg(50)->Arg(100);
BENCHMARK(BM_apply_parallel)->ArgsProduct({{20, 50, 100}, {1, 2, 4}});
BENCHMARK(BM_derivative_reference)->Arg(20)->Arg(50);
BENCHMARK(BM_derivative_parallel_general)->ArgsProduct({{20, 50}, {1, 2, 4}});
BENCHMARK(BM_linearize_parallel_semi)->ArgsProduct({{20, 50, 100}, {1, 2, 4}});
BENCHMARK(BM_laplacian_apply)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
