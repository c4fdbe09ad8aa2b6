#include <benchmark/benchmark.h>

#include "combalg/builtins.hpp"
#include "combalg/dominance.hpp"
#include "combalg/free_quotient.hpp"
#include "combalg/hypergraph_semiring.hpp"
#include "combalg/omega.hpp"

using namespace combalg;

namespace {

void BM_EvalNatMixedLaw(benchmark::State& state) {
  Term t = parse_term("x!*y!*(x C y)");
  NatAssignment a{static_cast<unsigned long>(state.range(0)), static_cast<unsigned long>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(eval_nat(t, a));
}
BENCHMARK(BM_EvalNatMixedLaw)->Arg(10)->Arg(100)->Arg(1000);

void BM_SatisfiesTrinomialInB(benchmark::State& state) {
  FiniteAlgebra B = algebra_B();
  Equation e = parse_equation("((x + y) C z)*(x C y) = ((z + x) C y)*(z C x)");
  SatOptions o;
  o.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(satisfies(B, e, o));
}
BENCHMARK(BM_SatisfiesTrinomialInB);

void BM_OmegaNormalize(benchmark::State& state) {
  auto terms = enumerate_terms(TermShape::from_signature(Signature::combinatorial(), 2), 5);
  for (auto _ : state)
    for (const Term& t : terms) benchmark::DoNotOptimize(omega_normalize(t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(terms.size()));
}
BENCHMARK(BM_OmegaNormalize);

void BM_NormalForms(benchmark::State& state) {
  TruncationParams p;
  p.m = 2;
  p.K = static_cast<std::uint64_t>(state.range(0));
  p.sig = Signature::combinatorial().without({Op::choose});
  for (auto _ : state) benchmark::DoNotOptimize(normal_forms(p));
}
BENCHMARK(BM_NormalForms)->DenseRange(3, 6);

void BM_Girth(benchmark::State& state) {
  Hypergraph3 H = *corpus_entry("fano");
  for (auto _ : state) benchmark::DoNotOptimize(girth(H));
}
BENCHMARK(BM_Girth);

void BM_Lemma2K5(benchmark::State& state) {
  Hypergraph3 H = *corpus_entry("K5_3");
  SatOptions o;
  o.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(check_lemma2(H, o));
}
BENCHMARK(BM_Lemma2K5)->Unit(benchmark::kMillisecond);

void BM_Lemma3Path2(benchmark::State& state) {
  Hypergraph3 H = *corpus_entry("path2");
  for (auto _ : state) benchmark::DoNotOptimize(check_lemma3(H));
}
BENCHMARK(BM_Lemma3Path2)->Unit(benchmark::kMillisecond);

void BM_TreeEmbed(benchmark::State& state) {
  Term s = parse_term("exp2(x + x)*(x! + 1)");
  Term t = parse_term("exp2((x + 1)*(x + x!))*((x*x)! + exp2(1 + 1))");
  for (auto _ : state) benchmark::DoNotOptimize(tree_embed(s, t));
}
BENCHMARK(BM_TreeEmbed);

}  // namespace

BENCHMARK_MAIN();
