#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sensoryrec/evaluation.h"
#include "sensoryrec/experiment.h"
#include "sensoryrec/extraction.h"
#include "sensoryrec/lexicon.h"
#include "sensoryrec/recommender.h"
#include "sensoryrec/synthetic.h"

using namespace sensoryrec;

namespace {

std::vector<ItemProfile> items_from(const SyntheticData& data, const FeatureTable& table) {
  std::vector<ItemProfile> items = data.truth;
  for (auto& item : items) {
    const auto it = table.find(item.item_id);
    item.features = it == table.end() ? FeatureVector{} : it->second;
  }
  return items;
}

// A chain-and-fan review: every third token is a sensory word with a
// modifier child.
ReviewDoc synthetic_review(int tokens) {
  std::vector<DepToken> toks;
  const char* words[] = {"scuro", "tanto", "locale"};
  for (int id = 1; id <= tokens; ++id) {
    DepToken t;
    t.id = id;
    t.form = t.lemma = words[(id - 1) % 3];
    t.upos = "X";
    t.head = id == 1 ? 0 : (id % 3 == 2 ? id - 1 : 1);
    t.deprel = id == 1 ? "root" : "dep";
    toks.push_back(std::move(t));
  }
  return {"p1", "r1", {DepTree(std::move(toks))}};
}

void BM_ExtractMentions(benchmark::State& state) {
  const auto sensory = parse_sensory_lexicon("scuro\tbrightness\t2\t-1\n");
  const auto modifiers = parse_modifier_lexicon("tanto\t1\n");
  const ReviewDoc doc = synthetic_review(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_mentions(doc, sensory, modifiers));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExtractMentions)->Arg(30)->Arg(300);

void BM_Predict(benchmark::State& state) {
  const auto data = generate_synthetic({});
  const auto items = items_from(data, data.source_a);
  const auto spec = standard_battery()[state.range(0)];
  for (auto _ : state) {
    for (const auto& item : items) benchmark::DoNotOptimize(predict(spec, data.users[0], item));
  }
  state.SetLabel(spec.name());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(items.size()));
}
BENCHMARK(BM_Predict)->DenseRange(0, 12);

void BM_GridSearch(benchmark::State& state) {
  const auto data = generate_synthetic({});
  const auto items = items_from(data, data.source_a);
  std::vector<Rating> train;
  for (const auto& r : data.ratings) {
    if (r.user_id == data.users[0].user_id) train.push_back(r);
  }
  const auto grid = alpha_grid(0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_search_alpha(data.users[0], train, items, Measure::kCos, grid));
  }
}
BENCHMARK(BM_GridSearch);

void BM_ComputeMetrics(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(1, 5);
  std::vector<Rating> test;
  std::vector<Prediction> preds;
  for (int u = 0; u < 30; ++u) {
    for (int i = 0; i < 8; ++i) {
      const std::string uid = "u" + std::to_string(u), iid = "i" + std::to_string(i);
      test.push_back({uid, iid, 1 + static_cast<int>(rng() % 5)});
      preds.push_back({uid, iid, r(rng)});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(compute_metrics(test, preds, 5, 3));
}
BENCHMARK(BM_ComputeMetrics);

void BM_RunExperiment(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_users = static_cast<int>(state.range(0));
  const auto synth = generate_synthetic(cfg);
  ExperimentData data;
  data.users = synth.users;
  data.ratings = synth.ratings;
  data.sources.push_back({"a", items_from(synth, synth.source_a)});
  const ExperimentOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(data, options));
}
BENCHMARK(BM_RunExperiment)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
