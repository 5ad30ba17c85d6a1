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

#ifndef QEDL_QED_H_
#define QEDL_QED_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qedl/corpus.h"
#include "qedl/crf.h"
#include "qedl/dataset.h"
#include "qedl/kg_store.h"
#include "qedl/segmentation.h"

namespace qedl {

enum class MentionSource { kKgRetrieval, kCrf, kLexiconIteration };

std::string_view MentionSourceName(MentionSource source);
MentionSource ParseMentionSource(std::string_view name);

struct Mention {
  int start = 0;
  int end = 0;
  std::string surface;
  MentionSource source = MentionSource::kKgRetrieval;

  Span span() const { return {start, end}; }
  nlohmann::ordered_json ToJson() const;
  static Mention FromJson(const nlohmann::json &j);
};

// Discovery strategies.
//   kKg        KG retrieval only.
//   kCrf       CRF over the Table-1 columns.
//   kEnsemble  CRF that also sees the KG-retrieval BIOES tags.
//   kIteration ensemble followed by the one-step lexicon iteration.
enum class QedMethod { kKg, kCrf, kEnsemble, kIteration };

std::string_view QedMethodName(QedMethod method);
QedMethod ParseQedMethod(std::string_view name);

// Everything discovery reads besides the question. Not owning.
struct QedResources {
  const KgStore *store = nullptr;
  const DocumentFrequencies *df = nullptr;
  CandidateOptions candidates;
  int df_buckets = kDefaultDfBuckets;
};

// KG-retrieval mentions; overlapping matches are all kept.
std::vector<Mention> DiscoverKg(std::u32string_view question,
                                const KgStore &store,
                                const CandidateOptions &options = {});

// Observation columns for one question, including the KG tag column.
std::vector<CharObservation> BuildObservations(std::u32string_view question,
                                               const QedResources &res);

// Viterbi decode + lenient BIOES decode. When the model was trained with
// the KG template this is the ensemble method.
std::vector<Mention> DiscoverCrf(std::u32string_view question,
                                 const CrfModel &model,
                                 const QedResources &res);

// crf ∪ {m ∈ kg : m overlaps no CRF mention and m.surface is in the
// lexicon}. Added mentions are tagged kLexiconIteration. Identical spans
// are kept once (first by pipeline order); result sorted by (start, end).
std::vector<Mention> OneStepIteration(const std::vector<Mention> &crf_mentions,
                                      const std::vector<Mention> &kg_mentions,
                                      const KgStore &store);

// Gold-labelled training sequence for one question.
LabeledSequence MakeTrainingSequence(const Question &question,
                                     const QedResources &res);

// Trains the CRF for kCrf (no KG column) or kEnsemble/kIteration (with it).
// Throws InvalidArgument for kKg, which has nothing to train.
CrfModel TrainQed(const std::vector<Question> &questions, QedMethod method,
                  const QedResources &res, const CrfTrainingOptions &options,
                  std::vector<double> *history = nullptr);

// Runs a method end to end. `model` may be null only for kKg.
std::vector<Mention> Discover(std::u32string_view question, QedMethod method,
                              const CrfModel *model, const QedResources &res);

}  // namespace qedl

#endif  // QEDL_QED_H_
