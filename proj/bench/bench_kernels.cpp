// Serial reference vs OpenMP kernels: dense fraction-free elimination, and
// assembly of the naive differential and the Hamiltonian differential.

#include <benchmark/benchmark.h>

#include "htwist/exactla.hpp"
#include "htwist/instances.hpp"
#include "htwist/naivecohom.hpp"
#include "htwist/pq3.hpp"

using namespace htwist;

namespace {

exactla::RMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  instances::Rng rng(seed);
  exactla::RMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, instances::small_rational(rng, 5, 3));
  return m;
}

void BM_RankSerial(benchmark::State& st) {
  const auto m = random_matrix(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(exactla::serial::rank(m));
}

void BM_RankParallel(benchmark::State& st) {
  const auto m = random_matrix(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(exactla::rank(m));
}

void BM_EchelonSerial(benchmark::State& st) {
  const auto m = random_matrix(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(2 * st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(exactla::serial::echelon(m));
}

void BM_EchelonParallel(benchmark::State& st) {
  const auto m = random_matrix(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(2 * st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(exactla::echelon(m));
}

TwistedLieAlgebra bench_algebra() {
  instances::Rng rng(3);
  return instances::random_jacobiator_twist(rng, 5, 0.6);
}

void naive_d(benchmark::State& st, parallel::Exec exec) {
  const auto T = bench_algebra();
  const auto q = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(naive_d_matrix(T, 1, q, exec));
}
void BM_NaiveDSerial(benchmark::State& st) { naive_d(st, parallel::Exec::Serial); }
void BM_NaiveDParallel(benchmark::State& st) { naive_d(st, parallel::Exec::Parallel); }

void split_cohom(benchmark::State& st, parallel::Exec exec) {
  instances::Rng rng(4);
  const auto S = instances::random_split(rng, 4);
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(pq3::split_cohomology(S, k, exec));
}
void BM_SplitCohomSerial(benchmark::State& st) { split_cohom(st, parallel::Exec::Serial); }
void BM_SplitCohomParallel(benchmark::State& st) { split_cohom(st, parallel::Exec::Parallel); }

}  // namespace

BENCHMARK(BM_RankSerial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankParallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EchelonSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EchelonParallel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NaiveDSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NaiveDParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitCohomSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitCohomParallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
