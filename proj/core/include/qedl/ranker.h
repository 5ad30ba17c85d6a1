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

#ifndef QEDL_RANKER_H_
#define QEDL_RANKER_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qedl/kg_store.h"
#include "qedl/qed.h"
#include "qedl/similarity.h"

namespace qedl {

inline constexpr int kElFeatureCount = 8;

// Fixed slot order of the linking feature vector.
inline constexpr std::array<std::string_view, kElFeatureCount> kElFeatureLayout =
    {"semantic_similarity", "ts_qen_tfidf", "ts_qen_lsi", "ts_qen_lda",
     "ts_qea_tfidf",        "ts_qea_lsi",   "ts_qea_lda", "popularity"};

using ElFeatureVector = std::array<double, kElFeatureCount>;

// Feature groups that can be switched off for ablation runs.
enum FeatureGroupMask : unsigned {
  kSemanticFeatures = 1u << 0,
  kNameTextFeatures = 1u << 1,       // TS_QEN
  kAttributeTextFeatures = 1u << 2,  // TS_QEA
  kPopularityFeatures = 1u << 3,
  kAllFeatures = 0xFu,
};

// Parses "all" or a comma list of semantic, ts_qen, ts_qea, popularity.
unsigned ParseFeatureGroups(std::string_view spec);
std::string FeatureGroupsName(unsigned mask);
// Zeroes the slots of disabled groups.
void ApplyFeatureMask(unsigned mask, ElFeatureVector &features);

// How the |e| normalizer avge is computed.
enum class AvgeMode {
  kPerMention,  // mean |e| over the candidates of the current mention
  kGlobal,      // mean |e| over the whole KG
};

// Read-only inputs of feature computation. Not owning.
class SimilarityContext {
 public:
  SimilarityContext(const KgStore &store, const EmbeddingTable &embeddings,
                    const CorpusModels &models, Bm25Params bm25 = {},
                    AvgeMode avge_mode = AvgeMode::kPerMention);

  // Normalized FMM tokens, minus stopwords and bare separators.
  std::vector<std::string> Terms(std::string_view text) const;
  // Name tokens followed by the tokens of every attribute value.
  std::vector<std::string> EntityTerms(const KgEntity &entity) const;
  std::vector<std::string> AttributeTerms(const KgEntity &entity) const;

  const KgStore &store() const { return store_; }
  const EmbeddingTable &embeddings() const { return embeddings_; }
  const CorpusModels &models() const { return models_; }
  const Bm25Params &bm25() const { return bm25_; }
  AvgeMode avge_mode() const { return avge_mode_; }
  double global_avge() const { return global_avge_; }

 private:
  const KgStore &store_;
  const EmbeddingTable &embeddings_;
  const CorpusModels &models_;
  Bm25Params bm25_;
  AvgeMode avge_mode_;
  double global_avge_ = 1.0;
};

// Entities sharing the mention's normalized surface, ordered by id.
std::vector<const KgEntity *> GenerateElCandidates(const Mention &mention,
                                                   const KgStore &store);

// The eight features of one (question, entity) pair. Texts with no usable
// terms give 0 for the corresponding similarities.
ElFeatureVector BuildFeatures(std::string_view question,
                              const KgEntity &entity,
                              const SimilarityContext &context, double avge);

// Features for every candidate of one mention, with avge taken per the
// context's mode, then masked.
std::vector<ElFeatureVector> BuildCandidateFeatures(
    std::string_view question, const std::vector<const KgEntity *> &candidates,
    const SimilarityContext &context, unsigned mask = kAllFeatures);

// One training query: the gold candidate and its competitors.
struct RankingExample {
  std::string query_id;
  std::string gold_id;
  ElFeatureVector gold{};
  std::vector<std::string> negative_ids;
  std::vector<ElFeatureVector> negatives;
};

struct RankerOptions {
  double l2 = 0.01;
  int epochs = 100;
  double eta0 = 0.1;
  uint64_t seed = 1;
};

// Linear scorer over z-normalized features.
class RankModel {
 public:
  static constexpr int kFormatVersion = 1;

  ElFeatureVector weights{};
  ElFeatureVector mean{};
  // Per-slot scale; slots with zero training variance use 1.
  ElFeatureVector scale{1, 1, 1, 1, 1, 1, 1, 1};
  unsigned feature_mask = kAllFeatures;
  double l2 = 0.0;
  int epochs = 0;
  uint64_t seed = 0;

  ElFeatureVector Normalize(const ElFeatureVector &x) const;
  double Score(const ElFeatureVector &x) const;

  nlohmann::ordered_json ToJson() const;
  // Throws ModelError if the layout differs.
  static RankModel FromJson(const nlohmann::json &j);
  void Save(const std::string &path) const;
  static RankModel Load(const std::string &path);
};

// Pairwise hinge objective on normalized difference vectors:
//   sum_pairs max(0, 1 - w.d) + l2 ||w||^2.
// `gradient` (optional) receives a subgradient (0 at kinks).
double PairwiseObjective(const ElFeatureVector &w,
                         const std::vector<ElFeatureVector> &differences,
                         double l2, ElFeatureVector *gradient);

// Normalized gold-minus-negative vectors of a dataset.
std::vector<ElFeatureVector> PairDifferences(
    const RankModel &model, const std::vector<RankingExample> &examples);

// Ranking SVM trained by stochastic subgradient descent over pairs, pair
// order reshuffled every epoch from `seed`, step eta0 / (1 + t / epochs)
// with t the epoch index. The L2 term is applied as an exact shrink
// w /= (1 + 2 eta l2 / num_pairs) after each hinge step. Feature
// statistics come from every gold and negative vector. `history`, if
// given, receives the objective before training and after each epoch.
// Throws InvalidArgument when the dataset is empty or has no pairs.
RankModel TrainRanker(const std::vector<RankingExample> &examples,
                      const RankerOptions &options,
                      std::vector<double> *history = nullptr);

struct RankedCandidate {
  std::string entity_id;
  double score = 0.0;
  ElFeatureVector features{};
};

struct ScoredInput {
  std::string entity_id;
  ElFeatureVector features{};
};

// Sorted by score descending; exact ties by entity id ascending.
std::vector<RankedCandidate> RankCandidates(
    const RankModel &model, const std::vector<ScoredInput> &candidates);

}  // namespace qedl

#endif  // QEDL_RANKER_H_
