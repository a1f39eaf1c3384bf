#include <random>

#include <benchmark/benchmark.h>

#include "taiw/ingestion.hpp"
#include "taiw/neighborhood.hpp"
#include "taiw/synthetic.hpp"
#include "taiw/trainer.hpp"

using namespace taiw;

namespace {

const DatasetSplit& bench_split() {
  static const DatasetSplit split = split_leave_one_basket(generate_synthetic(SyntheticConfig{}, 7).log);
  return split;
}

void BM_Gamma(benchmark::State& state) {
  KernelParams p(1);
  p.set_constrained(0, ItemKernel{0.3, 0.2, 7.0, 1.5, 1.0});
  double dt = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma(0, dt, p));
    dt = dt > 60.0 ? 0.0 : dt + 0.37;
  }
}
BENCHMARK(BM_Gamma);

void BM_UserVectorDot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> v(0.0, 1.0);
  std::vector<double> dense(n);
  for (double& x : dense) x = v(rng);
  std::vector<std::pair<ItemId, double>> entries;
  for (ItemId i = 0; i < n; i += 17) entries.emplace_back(i, v(rng));
  const UserVector a = UserVector::dense(dense);
  const UserVector b = UserVector::sparse(n, entries);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.dot(b));
    benchmark::DoNotOptimize(b.dot(b));
  }
}
BENCHMARK(BM_UserVectorDot)->Arg(1000)->Arg(50000);

void BM_Knn(benchmark::State& state) {
  const DatasetSplit& split = bench_split();
  ModelConfig cfg;
  const TaiwModel model = initialize_model(split, cfg, 1);
  const NeighborIndex index = build_index(split.train, model);
  const auto k = static_cast<std::size_t>(state.range(0));
  UserId u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn(index.row(u), index, k, u));
    u = (u + 1) % static_cast<UserId>(index.size());
  }
}
BENCHMARK(BM_Knn)->Arg(10)->Arg(50);

void BM_TrainEpoch(benchmark::State& state) {
  const DatasetSplit& split = bench_split();
  ModelConfig cfg;
  cfg.variant = state.range(0) ? Variant::kTransductive : Variant::kInductive;
  TaiwModel model = initialize_model(split, cfg, 1);
  const TrainingData data(split.train, split.num_items);
  const auto examples = build_examples(split.train, cfg.variant);
  TrainerState ts(model, 1);
  for (auto _ : state) benchmark::DoNotOptimize(train_epoch(model, data, examples, ts));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * examples.size()));
}
BENCHMARK(BM_TrainEpoch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
