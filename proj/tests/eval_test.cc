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
#include <functional>

#include <gtest/gtest.h>

#include "qedl/errors.h"
#include "qedl/fixtures.h"
#include "qedl/random.h"
#include "qedl/text.h"

namespace qedl {
namespace {

TEST(F1Test, PublishedRows) {
  struct Row {
    double p, r, f1;
  };
  // QED rows, then the end-to-end row.
  const std::vector<Row> rows = {
      {0.2863, 0.7260, 0.4106}, {0.4466, 0.4328, 0.4396},
      {0.4695, 0.5011, 0.4848}, {0.4646, 0.5384, 0.4988},
      {0.4742, 0.5394, 0.5047}, {0.4788, 0.5426, 0.5087},
      {0.5590, 0.6716, 0.6102}, {0.5536, 0.7708, 0.6444},
      {0.3896, 0.5405, 0.4528}};
  for (const Row &row : rows) {
    EXPECT_NEAR(F1Score(row.p, row.r), row.f1, 1e-4) << row.p << " " << row.r;
  }
}

TEST(F1Test, Bounds) {
  EXPECT_EQ(F1Score(0, 0), 0.0);
  EXPECT_EQ(F1Score(1, 1), 1.0);
  Rng rng(51);
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.Uniform(), r = rng.Uniform();
    const double f = F1Score(p, r);
    EXPECT_GE(f, std::min(p, r) - 1e-15);
    EXPECT_LE(f, std::max(p, r) + 1e-15);
  }
}

TEST(QedReportTest, ZeroDivision) {
  QedReport r = QedReport::FromCounts(0, 0, 0);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  r = QedReport::FromCounts(4, 5, 2);
  EXPECT_EQ(r.precision, 0.5);
  EXPECT_EQ(r.recall, 0.4);
  EXPECT_NEAR(r.f1, 0.4 / 0.9, 1e-15);
}

TEST(QedMetricsTest, PerfectPrediction) {
  std::vector<std::vector<Span>> gold = {{{0, 2}, {3, 6}}, {{1, 4}}};
  QedReport r = QedMetrics(gold, gold);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_THROW(QedMetrics({}, gold), InvalidArgument);
}

// Maximum bipartite matching by augmenting paths, an edge joining a
// prediction and a gold span iff they are equal.
int64_t MaxMatching(const std::vector<Span> &pred, const std::vector<Span> &gold) {
  std::vector<int> owner(gold.size(), -1);
  int64_t matched = 0;
  for (size_t p = 0; p < pred.size(); ++p) {
    std::vector<bool> seen(gold.size(), false);
    std::function<bool(size_t)> augment = [&](size_t u) {
      for (size_t g = 0; g < gold.size(); ++g) {
        if (seen[g] || !(pred[u] == gold[g])) continue;
        seen[g] = true;
        if (owner[g] < 0 || augment(static_cast<size_t>(owner[g]))) {
          owner[g] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(p)) ++matched;
  }
  return matched;
}

std::vector<Span> RandomSpans(Rng &rng) {
  std::vector<Span> out;
  const int n = static_cast<int>(rng.UniformInt(5));
  for (int i = 0; i < n; ++i) {
    const int s = static_cast<int>(rng.UniformInt(3));
    out.push_back({s, s + 1 + static_cast<int>(rng.UniformInt(2))});
  }
  return out;
}

TEST(QedMetricsTest, CountsMatchBipartiteMatcher) {
  Rng rng(52);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::vector<Span>> pred, gold;
    int64_t matched = 0, n_pred = 0, n_gold = 0;
    for (int q = 0; q < 4; ++q) {
      pred.push_back(RandomSpans(rng));
      gold.push_back(RandomSpans(rng));
      matched += MaxMatching(pred.back(), gold.back());
      n_pred += pred.back().size();
      n_gold += gold.back().size();
    }
    QedReport r = QedMetrics(pred, gold);
    EXPECT_EQ(r.correct, matched);
    EXPECT_EQ(r.predicted, n_pred);
    EXPECT_EQ(r.gold, n_gold);
    EXPECT_LE(r.correct, std::min(r.predicted, r.gold));

    // Symmetric under question and mention order.
    std::vector<size_t> order = {0, 1, 2, 3};
    rng.Shuffle(order);
    std::vector<std::vector<Span>> pred2, gold2;
    for (size_t i : order) {
      pred2.push_back(pred[i]);
      gold2.push_back(gold[i]);
      rng.Shuffle(pred2.back());
    }
    QedReport r2 = QedMetrics(pred2, gold2);
    EXPECT_EQ(r2.correct, r.correct);
    EXPECT_EQ(r2.f1, r.f1);
  }
}

TEST(ElAccuracyTest, ThirteenOfTwenty) {
  std::vector<std::vector<LinkedSpan>> pred(20), gold(20);
  for (int i = 0; i < 20; ++i) {
    gold[i] = {{{0, 2}, "E" + std::to_string(i)}};
    pred[i] = {{{0, 2}, i < 13 ? "E" + std::to_string(i) : std::string("X")}};
  }
  // Unmatched spans are not scored.
  pred[0].push_back({{5, 7}, "E0"});
  ElReport r = ElAccuracy(pred, gold);
  EXPECT_EQ(r.scored, 20);
  EXPECT_EQ(r.correct, 13);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.65);
}

TEST(ElAccuracyTest, DegenerateCases) {
  std::vector<std::vector<LinkedSpan>> gold = {{{{0, 2}, "E1"}}};
  EXPECT_EQ(ElAccuracy({{{{3, 4}, "E1"}}}, gold).accuracy, 0.0);
  EXPECT_EQ(ElAccuracy({{{{3, 4}, "E1"}}}, gold).scored, 0);
  // An unlinked mention is scored and wrong.
  ElReport r = ElAccuracy({{{{0, 2}, ""}}}, gold);
  EXPECT_EQ(r.scored, 1);
  EXPECT_EQ(r.accuracy, 0.0);
  EXPECT_EQ(ElAccuracy(gold, gold).accuracy, 1.0);
}

TEST(OverallMetricsTest, SpanAndEntityMustMatch) {
  std::vector<std::vector<LinkedSpan>> gold = {
      {{{0, 2}, "E1"}, {{3, 6}, "E2"}}, {{{1, 3}, "E3"}}};
  QedReport perfect = OverallMetrics(gold, gold);
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);

  auto wrong = gold;
  for (auto &q : wrong) {
    for (auto &m : q) m.entity_id += "x";
  }
  QedReport r = OverallMetrics(wrong, gold);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(QedMetrics({{{0, 2}, {3, 6}}, {{1, 3}}}, {{{0, 2}, {3, 6}}, {{1, 3}}}).f1,
            1.0);

  std::vector<std::vector<LinkedSpan>> partial = {{{{0, 2}, "E1"}, {{3, 6}, ""}},
                                                  {}};
  r = OverallMetrics(partial, gold);
  EXPECT_EQ(r.predicted, 2);
  EXPECT_EQ(r.correct, 1);
  EXPECT_NEAR(r.recall, 1.0 / 3.0, 1e-15);
}

TEST(SplitQuestionsTest, DeterministicAndDisjoint) {
  std::vector<Question> qs;
  for (int i = 0; i < 20; ++i) qs.push_back({"q" + std::to_string(i), "x", {}});
  QuestionSplit a = SplitQuestions(qs, 0.25, 3);
  QuestionSplit b = SplitQuestions(qs, 0.25, 3);
  ASSERT_EQ(a.heldout.size(), 5u);
  ASSERT_EQ(a.train.size(), 15u);
  std::vector<std::string> seen;
  for (size_t i = 0; i < a.heldout.size(); ++i) {
    EXPECT_EQ(a.heldout[i].id, b.heldout[i].id);
    seen.push_back(a.heldout[i].id);
  }
  for (const auto &q : a.train) seen.push_back(q.id);
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::unique(seen.begin(), seen.end()), seen.end());
  EXPECT_EQ(seen.size(), 20u);
  EXPECT_THROW(SplitQuestions(qs, 1.0, 3), InvalidArgument);
}

// Fixture-backed resources shared by the sweep tests.
class SweepTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    FixtureConfig config;
    config.n_questions = 80;
    data_ = new FixtureData(GenerateFixture(config));
    store_ = new KgStore(data_->BuildStore());
    df_ = new DocumentFrequencies(data_->corpus);
  }
  static void TearDownTestSuite() {
    delete df_;
    delete store_;
    delete data_;
  }
  QedResources Resources() const { return {store_, df_, {}, kDefaultDfBuckets}; }

  static FixtureData *data_;
  static KgStore *store_;
  static DocumentFrequencies *df_;
};

FixtureData *SweepTest::data_ = nullptr;
KgStore *SweepTest::store_ = nullptr;
DocumentFrequencies *SweepTest::df_ = nullptr;

TEST_F(SweepTest, ShapeDeterminismAndOrdering) {
  SweepOptions options;
  options.sizes = {20, 60};
  SweepReport a = ConvergenceSweep(data_->questions, Resources(), options);
  ASSERT_EQ(a.rows.size(), 4u);
  EXPECT_EQ(a.rows[0].size, 20);
  EXPECT_EQ(a.rows[0].method, "crf");
  EXPECT_EQ(a.rows[1].method, "ensemble");
  EXPECT_EQ(a.rows[2].size, 60);
  for (size_t i = 0; i < a.rows.size(); i += 2) {
    EXPECT_GE(a.rows[i + 1].f1, a.rows[i].f1) << "size " << a.rows[i].size;
  }
  SweepReport b = ConvergenceSweep(data_->questions, Resources(), options);
  EXPECT_EQ(a.ToCsv(), b.ToCsv());
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());

  const std::string csv = a.ToCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "size,method,precision,recall,f1");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(SweepTest, SingleRowEqualsDirectTraining) {
  SweepOptions options;
  options.sizes = {30};
  options.methods = {QedMethod::kCrf};
  options.seed = 9;
  SweepReport report = ConvergenceSweep(data_->questions, Resources(), options);
  ASSERT_EQ(report.rows.size(), 1u);

  QuestionSplit split = SplitQuestions(data_->questions, 0.25, 9);
  std::vector<Question> train(split.train.begin(), split.train.begin() + 30);
  CrfModel model = TrainQed(train, QedMethod::kCrf, Resources(), {});
  QedReport direct = EvaluateQed(split.heldout, QedMethod::kCrf, &model, Resources());
  EXPECT_EQ(report.rows[0].precision, direct.precision);
  EXPECT_EQ(report.rows[0].recall, direct.recall);
  EXPECT_EQ(report.rows[0].f1, direct.f1);
}

TEST_F(SweepTest, InvalidSizes) {
  SweepOptions options;
  options.sizes = {61};
  EXPECT_THROW(ConvergenceSweep(data_->questions, Resources(), options),
               InvalidArgument);
  options.sizes = {20, 20};
  EXPECT_THROW(ConvergenceSweep(data_->questions, Resources(), options),
               InvalidArgument);
  options.sizes = {0};
  EXPECT_THROW(ConvergenceSweep(data_->questions, Resources(), options),
               InvalidArgument);
}

TEST(SweepReportTest, TextAndCsvFormatting) {
  SweepReport r;
  r.rows.push_back({100, "crf", 0.5, 0.25, F1Score(0.5, 0.25)});
  EXPECT_EQ(r.ToCsv(), "size,method,precision,recall,f1\n100,crf,0.5000,0.2500,0.3333\n");
  EXPECT_NE(r.ToText().find("0.3333"), std::string::npos);
}

struct LinkingFixture {
  FixtureData data;
  KgStore store;
  CorpusModels models;

  explicit LinkingFixture(double ambiguity) {
    FixtureConfig config;
    config.n_questions = 60;
    config.ambiguity_rate = ambiguity;
    data = GenerateFixture(config);
    store = data.BuildStore();
    SimilarityOptions options;
    options.lsi_rank = 20;
    options.lda.topics = 4;
    options.lda.train_sweeps = 50;
    models = CorpusModels::Fit(data.corpus, store.stopwords(), options);
  }
};

TEST(AblationTest, RowsAndProtocols) {
  LinkingFixture f(0.5);
  SimilarityContext context(f.store, f.data.embeddings, f.models);
  auto cases = LinkingCasesFromGold(f.data.questions, context);
  ASSERT_FALSE(cases.empty());
  const size_t half = cases.size() / 2;
  std::vector<LinkingCase> train(cases.begin(), cases.begin() + half);
  std::vector<LinkingCase> test(cases.begin() + half, cases.end());
  auto rows = RunAblation(train, test, {});
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].protocol, "cumulative");
  EXPECT_EQ(rows[0].features, "semantic");
  EXPECT_EQ(rows[3].features, "all");
  EXPECT_EQ(rows[4].protocol, "leave-one-out");
  EXPECT_EQ(rows[4].features, "ts_qen,ts_qea,popularity");
  for (const auto &row : rows) {
    EXPECT_GE(row.accuracy, 0.0);
    EXPECT_LE(row.accuracy, 1.0);
  }
  auto again = RunAblation(train, test, {});
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].accuracy, again[i].accuracy);
  }
}

TEST(AblationTest, NeedsAmbiguousMentions) {
  LinkingFixture f(0.0);
  SimilarityContext context(f.store, f.data.embeddings, f.models);
  auto cases = LinkingCasesFromGold(f.data.questions, context);
  EXPECT_THROW(RunAblation(cases, cases, {}), InvalidArgument);
}

TEST(LinkingAccuracyTest, MissingGoldCountsWrong) {
  RankModel zero;
  std::vector<LinkingCase> cases = {
      {"q1", "E1", {{"E1", {}}, {"E2", {}}}},
      {"q2", "E9", {{"E1", {}}}},
      {"q3", "E1", {}},
  };
  EXPECT_NEAR(LinkingAccuracy(zero, cases), 1.0 / 3.0, 1e-15);
  auto examples = RankingExamplesFrom(cases);
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].negative_ids, std::vector<std::string>{"E2"});
}

}  // namespace
}  // namespace qedl
