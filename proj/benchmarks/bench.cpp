#include <benchmark/benchmark.h>

#include "zhps/graph_rules.hpp"
#include "zhps/oracle.hpp"
#include "zhps/random_gen.hpp"
#include "zhps/rules.hpp"
#include "zhps/translate.hpp"
#include "zhps/verify.hpp"

using namespace zhps;

namespace {

Circuit conjugated(Rng& rng, int width, int gates) {
  Circuit c = random_circuit(rng, width, gates);
  for (const auto& g : adjoint(c).gates) c.gates.push_back(g);
  return c;
}

void BM_SimplifyPathsum(benchmark::State& state) {
  Rng rng(1);
  const Circuit c = conjugated(rng, 4, static_cast<int>(state.range(0)));
  const PurePathSum e = compose_pathsums(circuit_to_pathsum(c),
                                         circuit_to_pathsum(c).adjoint());
  for (auto _ : state) {
    auto [fix, trace] = simplify(e);
    benchmark::DoNotOptimize(fix);
  }
}
BENCHMARK(BM_SimplifyPathsum)->Arg(5)->Arg(10)->Arg(20);

void BM_SimplifyDiagram(benchmark::State& state) {
  Rng rng(2);
  const Circuit c = conjugated(rng, 4, static_cast<int>(state.range(0)));
  const Diagram d = normalize(circuit_to_diagram(c));
  for (auto _ : state) {
    auto [fix, trace] = simplify_diagram(d);
    benchmark::DoNotOptimize(fix);
  }
}
BENCHMARK(BM_SimplifyDiagram)->Arg(5)->Arg(10)->Arg(20);

void BM_Normalize(benchmark::State& state) {
  Rng rng(3);
  const Circuit c = random_circuit(rng, 4, static_cast<int>(state.range(0)));
  const RawDiagram raw = circuit_to_diagram(c);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(raw));
}
BENCHMARK(BM_Normalize)->Arg(10)->Arg(40);

void BM_TranslateRoundtrip(benchmark::State& state) {
  Rng rng(4);
  const Diagram d = random_normalized_diagram(rng, 8, 10);
  for (auto _ : state) benchmark::DoNotOptimize(pathsum_to_zh(zh_to_pathsum(d)));
}
BENCHMARK(BM_TranslateRoundtrip);

void BM_OracleCircuit(benchmark::State& state) {
  Rng rng(5);
  const Circuit c = random_circuit(rng, 4, 20);
  const RawDiagram raw = circuit_to_diagram(c);
  for (auto _ : state) benchmark::DoNotOptimize(eval_diagram(raw));
}
BENCHMARK(BM_OracleCircuit);

void BM_VerifySelf(benchmark::State& state) {
  Rng rng(6);
  const Circuit c = random_circuit(rng, 4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_circuits(c, c));
}
BENCHMARK(BM_VerifySelf)->Arg(10)->Arg(20);

} // namespace

BENCHMARK_MAIN();
