#include <benchmark/benchmark.h>

#include "cosettree/classify.hpp"
#include "cosettree/trees.hpp"
#include "cosettree/universal.hpp"
#include "cosettree/witness.hpp"

namespace {

using cosettree::FrontierMode;
using cosettree::GroupExpr;
using cosettree::WitnessSpec;

void BM_StaircaseWitness(benchmark::State& state) {
  const auto dim = static_cast<std::uint64_t>(state.range(0));
  const WitnessSpec spec = WitnessSpec::with_default_profile(2, dim, dim + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cosettree::staircase_witness(spec));
  }
}
BENCHMARK(BM_StaircaseWitness)->Arg(2)->Arg(3)->Arg(4);

void BM_DerivativeFixpoint(benchmark::State& state) {
  const auto dim = static_cast<std::uint64_t>(state.range(0));
  const auto tree =
      cosettree::staircase_witness(WitnessSpec::with_default_profile(2, dim, dim + 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cosettree::iterate_derivative(tree, FrontierMode::ClosedWorld));
  }
}
BENCHMARK(BM_DerivativeFixpoint)->Arg(2)->Arg(3)->Arg(4);

void BM_OrbitDecision(benchmark::State& state) {
  const cosettree::LevelStructure structure({
      cosettree::FiniteAbelian({4, 2}),
      cosettree::FiniteAbelian({4}),
      cosettree::FiniteAbelian({4}),
  });
  const auto ambient = cosettree::full_tree(structure);
  const auto tree = cosettree::full_tree(structure);
  const cosettree::TreeNode shift{{1, 0, 2, 3}};
  const auto moved = cosettree::translate(tree, shift);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cosettree::orbit_equivalent(tree, moved, ambient));
  }
}
BENCHMARK(BM_OrbitDecision);

void BM_EmbeddingPlan(benchmark::State& state) {
  const auto spec = cosettree::h_infinity_spec();
  const auto horizon = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cosettree::embedding_plan(spec, horizon));
  }
}
BENCHMARK(BM_EmbeddingPlan)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
