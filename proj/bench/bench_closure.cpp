#include <benchmark/benchmark.h>

#include <memory>
#include <numeric>

#include "howson/oracle.hpp"

using namespace howson;

namespace {

// S_k permuting the coordinates of the free semilattice of rank k.
struct Workload {
  std::shared_ptr<const Action> act;
  std::vector<SdpElem> x;
};

SAut permute_masks(int k, const std::vector<int>& perm) {
  std::vector<Element> images(static_cast<std::size_t>((1 << k) - 1));
  for (int mask = 1; mask < (1 << k); ++mask) {
    int image = 0;
    for (int bit = 0; bit < k; ++bit) {
      if (mask & (1 << bit)) image |= 1 << perm[static_cast<std::size_t>(bit)];
    }
    images[static_cast<std::size_t>(mask - 1)] = image - 1;
  }
  return SAut(std::move(images));
}

Workload make_workload(int k) {
  std::vector<int> swap(static_cast<std::size_t>(k));
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  std::vector<int> cycle(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % k;

  auto s = std::make_shared<const Semilattice>(free_semilattice(k));
  auto g = std::make_shared<const Group>(Group::finite_perm(k, {"t", "c"}, {swap, cycle}));
  auto act = std::make_shared<const Action>(
      Action::build(s, g, {permute_masks(k, swap), permute_masks(k, cycle)}));
  // Singletons {1} carrying each generator.
  return {act, {{0, g->generator(0)}, {0, g->generator(1)}}};
}

void BM_ClosureSerial(benchmark::State& state) {
  Workload w = make_workload(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(closure_serial(*w.act, w.x));
}

void BM_ClosureParallel(benchmark::State& state) {
  Workload w = make_workload(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(closure_parallel(*w.act, w.x));
}

}  // namespace

BENCHMARK(BM_ClosureSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
