#include <benchmark/benchmark.h>

#include "cellsheaf/corpus.hpp"
#include "cellsheaf/microlocal.hpp"

using namespace cellsheaf;

namespace {

const SheafComplex& sample(int which) {
  static const CorpusItem torus = corpus_item("staircase-torus");
  static const CorpusItem octahedron = corpus_item("octahedron");
  return which == 0 ? octahedron.sheaf("random_0") : torus.sheaf("random_0");
}

void cc(benchmark::State& state, Execution exec) {
  const SheafComplex& f = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_cycle(f, exec));
}

void cc_serial(benchmark::State& state) { cc(state, Execution::serial); }
void cc_parallel(benchmark::State& state) { cc(state, Execution::parallel); }

}  // namespace

// 0: octahedron, 1: staircase torus
BENCHMARK(cc_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(cc_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
