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

#include "qedl/fixtures.h"
#include "qedl/similarity.h"

namespace qedl {
namespace {

const FixtureData &Data() {
  static const FixtureData data = GenerateFixture({});
  return data;
}

void BM_SemanticSimilarity(benchmark::State &state) {
  const FixtureData &data = Data();
  DocumentFrequencies idf(data.corpus);
  const auto &q = data.corpus[0];
  const auto &e = data.corpus[1];
  for (auto _ : state) {
    benchmark::DoNotOptimize(SemanticSimilarity(q, e, data.embeddings, idf, {}, 8.0));
  }
}
BENCHMARK(BM_SemanticSimilarity);

void BM_FitCorpusModels(benchmark::State &state) {
  const FixtureData &data = Data();
  SimilarityOptions options;
  options.lsi_rank = 50;
  options.lda.topics = 8;
  options.lda.train_sweeps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CorpusModels::Fit(data.corpus, {}, options));
  }
}
BENCHMARK(BM_FitCorpusModels)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_LdaInfer(benchmark::State &state) {
  const FixtureData &data = Data();
  LdaOptions options;
  options.topics = 8;
  options.train_sweeps = 100;
  LdaModel lda;
  lda.Fit(data.corpus, {}, options);
  for (auto _ : state) benchmark::DoNotOptimize(lda.Infer(data.corpus[3]));
}
BENCHMARK(BM_LdaInfer);

void BM_LsiSimilarity(benchmark::State &state) {
  const FixtureData &data = Data();
  TfidfModel tfidf;
  tfidf.Fit(data.corpus);
  LsiModel lsi;
  lsi.Fit(tfidf, data.corpus, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsi.Similarity(tfidf, data.corpus[0], data.corpus[1]));
  }
}
BENCHMARK(BM_LsiSimilarity);

}  // namespace
}  // namespace qedl

BENCHMARK_MAIN();
