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

#ifndef QEDL_FIXTURES_H_
#define QEDL_FIXTURES_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qedl/corpus.h"
#include "qedl/dataset.h"
#include "qedl/kg_store.h"
#include "qedl/similarity.h"

namespace qedl {

// Synthetic data set shape. The generator builds a small Chinese-looking
// world: topic vocabularies, named entities (some sharing a surface
// form), generic nouns that are in the KG but never annotated, and
// template questions with 1-3 gold mentions each.
struct FixtureConfig {
  uint64_t seed = 7;
  int n_entities = 50;
  int n_questions = 200;
  // Number of topic words across all topics.
  int vocab_size = 80;
  int embedding_dim = 16;
  // Fraction of entity surface forms shared by two entities.
  double ambiguity_rate = 0.2;
  // Held-out share written to test.jsonl.
  double holdout_fraction = 0.25;

  // Throws InvalidArgument when inconsistent.
  void Validate() const;
};

struct LexiconEntry {
  std::string term;
  std::string pos;
};

struct FixtureData {
  std::vector<KgEntity> entities;
  std::vector<LexiconEntry> lexicon;
  std::vector<std::string> stopwords;
  EmbeddingTable embeddings;
  // Pre-tokenized documents, one per corpus line.
  std::vector<std::vector<std::string>> corpus;
  std::vector<Question> questions;

  // Store with the entities, lexicon and stopwords loaded.
  KgStore BuildStore() const;
};

// Deterministic in the config.
FixtureData GenerateFixture(const FixtureConfig &config);

// Writes kg.jsonl, lexicon.txt, stopwords.txt, embeddings.txt,
// corpus.txt, questions.jsonl and the train.jsonl/test.jsonl split
// into `dir` (created if missing).
void WriteFixture(const FixtureData &data, const FixtureConfig &config,
                  const std::string &dir);

}  // namespace qedl

#endif  // QEDL_FIXTURES_H_
