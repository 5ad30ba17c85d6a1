// Copyright 2026 The QEDL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qedl/eval.h"
#include "qedl/fixtures.h"
#include "qedl/qed.h"
#include "qedl/text.h"

namespace qedl {
namespace {

void BM_TrainQed(benchmark::State &state) {
  FixtureConfig config;
  config.n_questions = static_cast<int>(state.range(0));
  const FixtureData data = GenerateFixture(config);
  const KgStore store = data.BuildStore();
  const DocumentFrequencies df(data.corpus);
  QedResources res{&store, &df, {}, kDefaultDfBuckets};
  CrfTrainingOptions options;
  options.epochs = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TrainQed(data.questions, QedMethod::kEnsemble, res, options));
  }
}
BENCHMARK(BM_TrainQed)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_DiscoverIteration(benchmark::State &state) {
  const FixtureData data = GenerateFixture({});
  const KgStore store = data.BuildStore();
  const DocumentFrequencies df(data.corpus);
  QedResources res{&store, &df, {}, kDefaultDfBuckets};
  CrfTrainingOptions options;
  options.epochs = 50;
  const CrfModel model = TrainQed(data.questions, QedMethod::kEnsemble, res, options);
  std::vector<std::u32string> texts;
  for (const auto &q : data.questions) texts.push_back(DecodeUtf8(q.text));
  for (auto _ : state) {
    for (const auto &t : texts) {
      benchmark::DoNotOptimize(Discover(t, QedMethod::kIteration, &model, res));
    }
  }
  state.SetItemsProcessed(state.iterations() * texts.size());
}
BENCHMARK(BM_DiscoverIteration)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qedl

BENCHMARK_MAIN();
