/*
 * Copyright 2026 The slist Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cstddef>

#include "slist/evaluation.h"
#include "slist/recommender.h"
#include "slist/representation.h"
#include "slist/sessions.h"
#include "slist/solver.h"
#include "slist/synthetic.h"

namespace slist {
namespace {

SessionCorpus Corpus(std::size_t items, std::size_t sessions) {
  SynthParams params;
  params.num_items = items;
  params.num_sessions = sessions;
  PreprocessOptions pre;
  pre.min_item_support = 1;
  return Preprocess(GenerateSessions(params), pre);
}

void BM_Assemble(benchmark::State& state) {
  const SessionCorpus corpus = Corpus(500, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Assemble(corpus, DecayParams{}));
  }
  state.SetItemsProcessed(state.iterations() * corpus.num_sessions());
}
BENCHMARK(BM_Assemble)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);

void BM_Gram(benchmark::State& state) {
  const DesignMatrices dm = Assemble(Corpus(500, state.range(0)), {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(Gram(dm.full, dm.full_weights));
  }
  state.SetItemsProcessed(state.iterations() * dm.num_sessions());
}
BENCHMARK(BM_Gram)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);

void BM_InvertSpd(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Eigen::MatrixXd r = Eigen::MatrixXd::Random(n, n);
  Eigen::MatrixXd a = r.transpose() * r;
  a.diagonal().array() += double(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(InvertSpd(a, false));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_InvertSpd)
    ->RangeMultiplier(2)
    ->Range(128, 1024)
    ->Complexity(benchmark::oNCubed)
    ->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const auto kind = static_cast<ModelKind>(state.range(0));
  const DesignMatrices dm = Assemble(Corpus(800, 20000), {});
  HyperParams hyper;
  hyper.xi = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Solve(kind, dm, hyper));
  }
  state.SetLabel(std::string(ModelKindName(kind)));
}
BENCHMARK(BM_Solve)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Recommend(benchmark::State& state) {
  const SessionCorpus corpus = Corpus(state.range(0), 20000);
  const ItemModel model =
      Solve(ModelKind::kSlist, Assemble(corpus, {}), HyperParams{});
  const SessionState session =
      SessionState::FromItems(corpus.sessions.front().items);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Recommend(model, session, 20));
  }
}
BENCHMARK(BM_Recommend)->Arg(500)->Arg(2000);

void BM_EvaluateCorpus(benchmark::State& state) {
  const SessionCorpus corpus = Corpus(1000, 20000);
  const CorpusSplit split = SplitByDays(corpus, 3, 0);
  const ItemModel model =
      Solve(ModelKind::kSlist, Assemble(split.train, {}), HyperParams{});
  const SessionCorpus test = Reindex(split.test, split.train.vocab);
  const EvalConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EvaluateCorpus(model, test, config));
  }
  state.SetItemsProcessed(state.iterations() * test.num_sessions());
}
BENCHMARK(BM_EvaluateCorpus)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace slist

BENCHMARK_MAIN();
