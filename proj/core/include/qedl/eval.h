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

#ifndef QEDL_EVAL_H_
#define QEDL_EVAL_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qedl/crf.h"
#include "qedl/dataset.h"
#include "qedl/qed.h"
#include "qedl/ranker.h"

namespace qedl {

// 2PR / (P + R), or 0 when P + R = 0.
double F1Score(double precision, double recall);

// Precision/recall/F1 with counts. Every ratio with a zero denominator
// is 0.
struct QedReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t predicted = 0;
  int64_t gold = 0;
  int64_t correct = 0;

  static QedReport FromCounts(int64_t predicted, int64_t gold, int64_t correct);
  nlohmann::ordered_json ToJson() const;
};

// Exact-span matching, one-to-one within each question. Both lists are
// indexed by question.
QedReport QedMetrics(const std::vector<std::vector<Span>> &predicted,
                     const std::vector<std::vector<Span>> &gold);

// A predicted or gold mention together with its linked entity.
struct LinkedSpan {
  Span span;
  std::string entity_id;  // empty when nothing was linked
};

struct ElReport {
  double accuracy = 0.0;
  int64_t scored = 0;   // correctly recognized mentions
  int64_t correct = 0;  // of those, linked to the gold entity

  nlohmann::ordered_json ToJson() const;
};

// Linking accuracy over correctly recognized mentions only: predicted
// spans that exactly match a gold span (one-to-one). A mention with no
// linked entity counts as wrong.
ElReport ElAccuracy(const std::vector<std::vector<LinkedSpan>> &predicted,
                    const std::vector<std::vector<LinkedSpan>> &gold);

// End-to-end: a prediction is correct iff its span and entity both match
// a gold annotation (one-to-one).
QedReport OverallMetrics(const std::vector<std::vector<LinkedSpan>> &predicted,
                         const std::vector<std::vector<LinkedSpan>> &gold);

struct SweepRow {
  int size = 0;
  std::string method;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;

  // "size,method,precision,recall,f1" header plus one line per row.
  std::string ToCsv() const;
  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

// Deterministic train/held-out split: a seeded shuffle, with the first
// round(holdout_fraction * n) questions held out.
struct QuestionSplit {
  std::vector<Question> train;
  std::vector<Question> heldout;
};
QuestionSplit SplitQuestions(const std::vector<Question> &questions,
                             double holdout_fraction, uint64_t seed);

// QED report of one method on a question set.
QedReport EvaluateQed(const std::vector<Question> &questions, QedMethod method,
                      const CrfModel *model, const QedResources &res);

struct SweepOptions {
  std::vector<int> sizes;
  std::vector<QedMethod> methods = {QedMethod::kCrf, QedMethod::kEnsemble};
  double holdout_fraction = 0.25;
  uint64_t seed = 1;
  CrfTrainingOptions crf;
};

// Training-size sweep. The corpus is shuffled once; the first part is
// held out and each size trains on a prefix of the rest, so larger
// training sets contain smaller ones. Rows are emitted size-major.
// Throws InvalidArgument if sizes are not strictly increasing, not
// positive, or exceed the training pool.
SweepReport ConvergenceSweep(const std::vector<Question> &corpus,
                             const QedResources &res,
                             const SweepOptions &options);

// Linking test data for one mention: candidate features and the gold id.
struct LinkingCase {
  std::string query_id;
  std::string gold_id;
  std::vector<ScoredInput> candidates;
};

// One linking case per gold annotation, with the candidates generated
// from the gold surface and all eight features computed.
std::vector<LinkingCase> LinkingCasesFromGold(
    const std::vector<Question> &questions, const SimilarityContext &context);

// Accuracy of a model on linking cases; a case whose gold entity is not
// among the candidates (or has none) counts as wrong.
double LinkingAccuracy(const RankModel &model,
                       const std::vector<LinkingCase> &cases);

// Ranking examples from linking cases: skips cases whose gold entity is
// missing or that have no competitors.
std::vector<RankingExample> RankingExamplesFrom(
    const std::vector<LinkingCase> &cases, unsigned mask = kAllFeatures);

struct AblationRow {
  std::string protocol;  // "cumulative" or "leave-one-out"
  std::string features;
  double accuracy = 0.0;
};

// Feature ablation: cumulative rows (semantic, +ts_qen, +ts_qea,
// +popularity) and leave-one-out rows over the four groups.
std::vector<AblationRow> RunAblation(const std::vector<LinkingCase> &train,
                                     const std::vector<LinkingCase> &test,
                                     const RankerOptions &options);

}  // namespace qedl

#endif  // QEDL_EVAL_H_
