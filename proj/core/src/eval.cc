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

#include "qedl/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "qedl/errors.h"
#include "qedl/random.h"
#include "qedl/text.h"

namespace qedl {

namespace {

double Ratio(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

template <typename T>
int64_t MultisetOverlap(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  int64_t count = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

void CheckSameLength(size_t a, size_t b) {
  if (a != b) {
    throw InvalidArgument("predictions cover " + std::to_string(a) +
                          " questions, gold covers " + std::to_string(b));
  }
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace

double F1Score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

QedReport QedReport::FromCounts(int64_t predicted, int64_t gold,
                                int64_t correct) {
  QedReport r;
  r.predicted = predicted;
  r.gold = gold;
  r.correct = correct;
  r.precision = Ratio(correct, predicted);
  r.recall = Ratio(correct, gold);
  r.f1 = F1Score(r.precision, r.recall);
  return r;
}

nlohmann::ordered_json QedReport::ToJson() const {
  nlohmann::ordered_json j;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["predicted"] = predicted;
  j["gold"] = gold;
  j["correct"] = correct;
  return j;
}

nlohmann::ordered_json ElReport::ToJson() const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  j["scored"] = scored;
  j["correct"] = correct;
  return j;
}

QedReport QedMetrics(const std::vector<std::vector<Span>> &predicted,
                     const std::vector<std::vector<Span>> &gold) {
  CheckSameLength(predicted.size(), gold.size());
  int64_t n_pred = 0, n_gold = 0, correct = 0;
  for (size_t q = 0; q < gold.size(); ++q) {
    n_pred += predicted[q].size();
    n_gold += gold[q].size();
    correct += MultisetOverlap(predicted[q], gold[q]);
  }
  return QedReport::FromCounts(n_pred, n_gold, correct);
}

ElReport ElAccuracy(const std::vector<std::vector<LinkedSpan>> &predicted,
                    const std::vector<std::vector<LinkedSpan>> &gold) {
  CheckSameLength(predicted.size(), gold.size());
  ElReport report;
  for (size_t q = 0; q < gold.size(); ++q) {
    std::vector<bool> used(gold[q].size(), false);
    for (const LinkedSpan &p : predicted[q]) {
      // Prefer a gold annotation that also agrees on the entity.
      int match = -1;
      for (size_t g = 0; g < gold[q].size(); ++g) {
        if (used[g] || gold[q][g].span != p.span) continue;
        if (match < 0) match = static_cast<int>(g);
        if (gold[q][g].entity_id == p.entity_id) {
          match = static_cast<int>(g);
          break;
        }
      }
      if (match < 0) continue;
      used[match] = true;
      ++report.scored;
      if (!p.entity_id.empty() && p.entity_id == gold[q][match].entity_id) {
        ++report.correct;
      }
    }
  }
  report.accuracy = Ratio(report.correct, report.scored);
  return report;
}

QedReport OverallMetrics(const std::vector<std::vector<LinkedSpan>> &predicted,
                         const std::vector<std::vector<LinkedSpan>> &gold) {
  CheckSameLength(predicted.size(), gold.size());
  using Key = std::tuple<int, int, std::string>;
  int64_t n_pred = 0, n_gold = 0, correct = 0;
  for (size_t q = 0; q < gold.size(); ++q) {
    std::vector<Key> p, g;
    for (const auto &x : predicted[q]) {
      // An unlinked prediction can never be correct; keep it in the count.
      p.emplace_back(x.span.start, x.span.end,
                     x.entity_id.empty() ? std::string("\x01") : x.entity_id);
    }
    for (const auto &x : gold[q]) {
      g.emplace_back(x.span.start, x.span.end, x.entity_id);
    }
    n_pred += p.size();
    n_gold += g.size();
    correct += MultisetOverlap(std::move(p), std::move(g));
  }
  return QedReport::FromCounts(n_pred, n_gold, correct);
}

std::string SweepReport::ToCsv() const {
  std::ostringstream out;
  out << "size,method,precision,recall,f1\n";
  for (const auto &r : rows) {
    out << r.size << ',' << r.method << ',' << FormatDouble(r.precision) << ','
        << FormatDouble(r.recall) << ',' << FormatDouble(r.f1) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json SweepReport::ToJson() const {
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto &r : rows) {
    nlohmann::ordered_json j;
    j["size"] = r.size;
    j["method"] = r.method;
    j["precision"] = r.precision;
    j["recall"] = r.recall;
    j["f1"] = r.f1;
    rows_json.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["rows"] = std::move(rows_json);
  return out;
}

std::string SweepReport::ToText() const {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%8s  %-10s %9s %9s %9s\n", "size", "method",
                "precision", "recall", "f1");
  out << buf;
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof(buf), "%8d  %-10s %9.4f %9.4f %9.4f\n", r.size,
                  r.method.c_str(), r.precision, r.recall, r.f1);
    out << buf;
  }
  return out.str();
}

QuestionSplit SplitQuestions(const std::vector<Question> &questions,
                             double holdout_fraction, uint64_t seed) {
  if (holdout_fraction < 0.0 || holdout_fraction >= 1.0) {
    throw InvalidArgument("holdout fraction must be in [0, 1)");
  }
  std::vector<size_t> order(questions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(order);
  const size_t held = static_cast<size_t>(
      std::llround(holdout_fraction * static_cast<double>(questions.size())));
  QuestionSplit split;
  for (size_t i = 0; i < order.size(); ++i) {
    (i < held ? split.heldout : split.train).push_back(questions[order[i]]);
  }
  return split;
}

QedReport EvaluateQed(const std::vector<Question> &questions, QedMethod method,
                      const CrfModel *model, const QedResources &res) {
  std::vector<std::vector<Span>> predicted, gold;
  for (const Question &q : questions) {
    std::vector<Span> spans;
    for (const Mention &m : Discover(DecodeUtf8(q.text), method, model, res)) {
      spans.push_back(m.span());
    }
    predicted.push_back(std::move(spans));
    gold.push_back(q.GoldSpans());
  }
  return QedMetrics(predicted, gold);
}

SweepReport ConvergenceSweep(const std::vector<Question> &corpus,
                             const QedResources &res,
                             const SweepOptions &options) {
  QuestionSplit split =
      SplitQuestions(corpus, options.holdout_fraction, options.seed);
  int previous = 0;
  for (int size : options.sizes) {
    if (size <= 0) throw InvalidArgument("sweep sizes must be positive");
    if (size <= previous) {
      throw InvalidArgument("sweep sizes must be strictly increasing");
    }
    if (size > static_cast<int>(split.train.size())) {
      throw InvalidArgument("sweep size " + std::to_string(size) +
                            " exceeds the training pool of " +
                            std::to_string(split.train.size()) + " questions");
    }
    previous = size;
  }
  if (options.methods.empty()) throw InvalidArgument("no sweep methods");

  SweepReport report;
  for (int size : options.sizes) {
    std::vector<Question> train(split.train.begin(),
                                split.train.begin() + size);
    std::map<bool, CrfModel> models;  // keyed by "uses KG column"
    for (QedMethod method : options.methods) {
      const CrfModel *model = nullptr;
      if (method != QedMethod::kKg) {
        const bool with_kg = method != QedMethod::kCrf;
        auto it = models.find(with_kg);
        if (it == models.end()) {
          it = models
                   .emplace(with_kg, TrainQed(train, method, res, options.crf))
                   .first;
        }
        model = &it->second;
      }
      QedReport r = EvaluateQed(split.heldout, method, model, res);
      report.rows.push_back({size, std::string(QedMethodName(method)),
                             r.precision, r.recall, r.f1});
    }
  }
  return report;
}

std::vector<LinkingCase> LinkingCasesFromGold(
    const std::vector<Question> &questions, const SimilarityContext &context) {
  std::vector<LinkingCase> cases;
  for (const auto &q : questions) {
    for (const auto &g : q.entities) {
      Mention m{g.span.start, g.span.end, g.mention, MentionSource::kCrf};
      auto candidates = GenerateElCandidates(m, context.store());
      auto features = BuildCandidateFeatures(q.text, candidates, context);
      LinkingCase c{q.id, g.kb_id, {}};
      for (size_t i = 0; i < candidates.size(); ++i) {
        c.candidates.push_back({candidates[i]->id, features[i]});
      }
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

double LinkingAccuracy(const RankModel &model,
                       const std::vector<LinkingCase> &cases) {
  int64_t correct = 0;
  for (const auto &c : cases) {
    std::vector<ScoredInput> masked = c.candidates;
    for (auto &s : masked) ApplyFeatureMask(model.feature_mask, s.features);
    auto ranked = RankCandidates(model, masked);
    if (!ranked.empty() && ranked.front().entity_id == c.gold_id) ++correct;
  }
  return Ratio(correct, static_cast<int64_t>(cases.size()));
}

std::vector<RankingExample> RankingExamplesFrom(
    const std::vector<LinkingCase> &cases, unsigned mask) {
  std::vector<RankingExample> out;
  for (const auto &c : cases) {
    RankingExample ex;
    ex.query_id = c.query_id;
    ex.gold_id = c.gold_id;
    bool has_gold = false;
    for (const auto &s : c.candidates) {
      ElFeatureVector f = s.features;
      ApplyFeatureMask(mask, f);
      if (s.entity_id == c.gold_id && !has_gold) {
        ex.gold = f;
        has_gold = true;
      } else {
        ex.negative_ids.push_back(s.entity_id);
        ex.negatives.push_back(f);
      }
    }
    if (has_gold && !ex.negatives.empty()) out.push_back(std::move(ex));
  }
  return out;
}

std::vector<AblationRow> RunAblation(const std::vector<LinkingCase> &train,
                                     const std::vector<LinkingCase> &test,
                                     const RankerOptions &options) {
  struct Setting {
    const char *protocol;
    unsigned mask;
  };
  const std::vector<Setting> settings = {
      {"cumulative", kSemanticFeatures},
      {"cumulative", kSemanticFeatures | kNameTextFeatures},
      {"cumulative",
       kSemanticFeatures | kNameTextFeatures | kAttributeTextFeatures},
      {"cumulative", kAllFeatures},
      {"leave-one-out", kAllFeatures & ~kSemanticFeatures},
      {"leave-one-out", kAllFeatures & ~kNameTextFeatures},
      {"leave-one-out", kAllFeatures & ~kAttributeTextFeatures},
      {"leave-one-out", kAllFeatures & ~kPopularityFeatures},
  };
  std::vector<AblationRow> rows;
  for (const Setting &s : settings) {
    std::vector<RankingExample> examples = RankingExamplesFrom(train, s.mask);
    if (examples.empty()) {
      throw InvalidArgument("no ambiguous training mentions for ablation");
    }
    RankModel model = TrainRanker(examples, options);
    model.feature_mask = s.mask;
    rows.push_back({s.protocol, FeatureGroupsName(s.mask),
                    LinkingAccuracy(model, test)});
  }
  return rows;
}

}  // namespace qedl
