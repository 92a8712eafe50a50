// Serial reference vs OpenMP kernels on braid closures of growing size.

#include <benchmark/benchmark.h>

#include "khs/homology.hpp"
#include "khs/skein.hpp"
#include "khs/generate.hpp"

using namespace khs;

namespace {

// (s1 s2^-1)^k on three strands: 2k crossings
Diagram braid(int k) {
  std::vector<int> w;
  for (int t = 0; t < k; ++t) {
    w.push_back(1);
    w.push_back(-2);
  }
  return braid_closure(3, w);
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_Complex(benchmark::State& st) {
  const Diagram D = braid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Complex(D, exec_of(st)).states());
}

void BM_Homology(benchmark::State& st) {
  const Diagram D = braid(static_cast<int>(st.range(0)));
  const Complex C(D, Exec::Serial);
  for (auto _ : st) benchmark::DoNotOptimize(homology(C, Coeff::Z, exec_of(st)).groups.size());
}

void BM_Bracket(benchmark::State& st) {
  const Diagram D = braid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kauffman_bracket(D, exec_of(st)).size());
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int k : {3, 4, 5})
    for (int par : {0, 1}) b->Args({k, par});
  b->ArgNames({"half_crossings", "parallel"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Complex)->Apply(sizes);
BENCHMARK(BM_Homology)->Apply(sizes);
BENCHMARK(BM_Bracket)->Apply(sizes);

BENCHMARK_MAIN();
