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

#include "qedl/ranker.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <gtest/gtest.h>

#include "qedl/errors.h"
#include "qedl/random.h"
#include "qedl/segmentation.h"
#include "qedl/text.h"
#include "test_util.h"

namespace qedl {
namespace {

Mention MentionOf(const std::string &surface) {
  Mention m;
  m.surface = surface;
  m.end = static_cast<int>(DecodeUtf8(surface).size());
  return m;
}

std::vector<std::string> Ids(const std::vector<const KgEntity *> &entities) {
  std::vector<std::string> out;
  for (const KgEntity *e : entities) out.push_back(e->id);
  return out;
}

TEST(CandidateTest, AmbiguousSurface) {
  KgStore store = testing::WorkedExampleStore();
  EXPECT_EQ(Ids(GenerateElCandidates(MentionOf("方便面"), store)),
            (std::vector<std::string>{"W002", "W003"}));
  EXPECT_TRUE(GenerateElCandidates(MentionOf("火车"), store).empty());
  EXPECT_EQ(Ids(GenerateElCandidates(MentionOf("泡面"), store)),
            (std::vector<std::string>{"W002"}));
  EXPECT_EQ(Ids(GenerateElCandidates(MentionOf("孕产妇"), store)),
            (std::vector<std::string>{"W001"}));
}

// Worked-example resources for feature computation.
struct WorkedContext {
  KgStore store = testing::WorkedExampleStore();
  EmbeddingTable emb =
      EmbeddingTable::Load(testing::WorkedExampleDir() + "/embeddings.txt");
  CorpusModels models;

  WorkedContext() {
    SimilarityOptions options;
    options.lsi_rank = 4;
    options.lda.topics = 2;
    options.lda.train_sweeps = 100;
    models = CorpusModels::Fit(
        LoadCorpus(testing::WorkedExampleDir() + "/corpus.txt"),
        store.stopwords(), options);
  }
};

// Tokenization used by the recompute oracle: FMM, normalize, drop
// stopwords and empty tokens.
std::vector<std::string> ScriptTerms(const std::string &text,
                                     const KgStore &store) {
  std::vector<std::string> out;
  for (const Token &t : SegmentFmm(DecodeUtf8(text), store)) {
    std::string key = Normalize(t.surface);
    if (key.empty() || key == "_" || store.IsStopword(key)) continue;
    out.push_back(key);
  }
  return out;
}

TEST(BuildFeaturesTest, MatchesScriptedRecomputation) {
  WorkedContext w;
  SimilarityContext context(w.store, w.emb, w.models);
  const std::string question = "孕妇吃方便面好吗?";
  const std::vector<std::string> q = ScriptTerms(question, w.store);
  std::vector<const KgEntity *> candidates =
      GenerateElCandidates(MentionOf("方便面"), w.store);
  ASSERT_EQ(candidates.size(), 2u);

  std::vector<std::vector<std::string>> names, attrs, all;
  double length_sum = 0.0;
  for (const KgEntity *e : candidates) {
    names.push_back(ScriptTerms(e->name, w.store));
    std::vector<std::string> a;
    for (const auto &[key, value] : e->attributes) {
      auto part = ScriptTerms(value, w.store);
      a.insert(a.end(), part.begin(), part.end());
    }
    attrs.push_back(a);
    std::vector<std::string> both = names.back();
    both.insert(both.end(), a.begin(), a.end());
    all.push_back(both);
    length_sum += both.size();
  }
  const double avge = length_sum / candidates.size();
  const auto features = BuildCandidateFeatures(question, candidates, context);
  for (size_t c = 0; c < candidates.size(); ++c) {
    double semantic = 0.0;
    for (const auto &term : q) {
      double sem = 0.0;
      const auto *u = w.emb.Find(term);
      for (const auto &other : all[c]) {
        const auto *v = w.emb.Find(other);
        if (u == nullptr) {
          if (term == other) sem = 1.0;
        } else if (v != nullptr) {
          sem = std::max(sem, Cosine(*u, *v));
        }
      }
      if (sem == 0.0) continue;
      const double k1 = 1.5, b = 0.75;
      semantic += w.models.idf.Idf(term) * sem * (k1 + 1) /
                  (sem + k1 * (1 - b + b * all[c].size() / avge));
    }
    const ElFeatureVector expect = {
        semantic,
        w.models.tfidf.Similarity(q, names[c]),
        w.models.lsi.Similarity(w.models.tfidf, q, names[c]),
        w.models.lda.Similarity(q, names[c]),
        w.models.tfidf.Similarity(q, attrs[c]),
        w.models.lsi.Similarity(w.models.tfidf, q, attrs[c]),
        w.models.lda.Similarity(q, attrs[c]),
        std::log10(static_cast<double>(candidates[c]->popularity))};
    for (int k = 0; k < kElFeatureCount; ++k) {
      EXPECT_NEAR(features[c][k], expect[k], 1e-12)
          << candidates[c]->id << " slot " << kElFeatureLayout[k];
    }
  }
  EXPECT_GT(features[0][0], 0.0);
}

TEST(BuildFeaturesTest, DegenerateTexts) {
  WorkedContext w;
  SimilarityContext context(w.store, w.emb, w.models);
  KgEntity bare;
  bare.id = "X";
  bare.name = "方便面";
  const ElFeatureVector f = BuildFeatures("方便面", bare, context, 1.0);
  EXPECT_EQ(f[4], 0.0);
  EXPECT_EQ(f[5], 0.0);
  EXPECT_EQ(f[6], 0.0);
  EXPECT_NEAR(f[1], 1.0, 1e-12);
  EXPECT_EQ(f[7], 0.0);
}

TEST(BuildFeaturesTest, UnfittedModelsPropagate) {
  KgStore store = testing::WorkedExampleStore();
  EmbeddingTable emb(3);
  CorpusModels models;
  SimilarityContext context(store, emb, models);
  EXPECT_THROW(BuildFeatures("方便面", *store.Find("W002"), context, 1.0), Error);
}

TEST(FeatureMaskTest, ParseAndApply) {
  EXPECT_EQ(ParseFeatureGroups("all"), kAllFeatures);
  EXPECT_EQ(ParseFeatureGroups("semantic,popularity"),
            kSemanticFeatures | kPopularityFeatures);
  EXPECT_THROW(ParseFeatureGroups("semantic,bogus"), InvalidArgument);
  EXPECT_EQ(FeatureGroupsName(kNameTextFeatures | kAttributeTextFeatures),
            "ts_qen,ts_qea");
  ElFeatureVector f = {1, 2, 3, 4, 5, 6, 7, 8};
  ApplyFeatureMask(kSemanticFeatures, f);
  EXPECT_EQ(f, (ElFeatureVector{1, 0, 0, 0, 0, 0, 0, 0}));
}

ElFeatureVector RandomVector(Rng &rng) {
  ElFeatureVector v;
  for (double &x : v) x = rng.Normal();
  return v;
}

// Gold beats every negative on slot 0 by at least 0.5; other slots are
// noise.
std::vector<RankingExample> SeparableExamples(uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<RankingExample> out;
  for (int q = 0; q < n; ++q) {
    RankingExample ex;
    ex.query_id = "q" + std::to_string(q);
    ex.gold_id = "g";
    ex.gold = RandomVector(rng);
    const int negatives = static_cast<int>(rng.UniformRange(1, 4));
    for (int k = 0; k < negatives; ++k) {
      ElFeatureVector neg = RandomVector(rng);
      neg[0] = ex.gold[0] - 0.5 - rng.Uniform();
      ex.negative_ids.push_back("n" + std::to_string(k));
      ex.negatives.push_back(neg);
    }
    out.push_back(ex);
  }
  return out;
}

TEST(TrainRankerTest, SeparableFixtureTopOne) {
  const auto train = SeparableExamples(41, 80);
  std::vector<double> history;
  RankModel model = TrainRanker(train, {}, &history);
  EXPECT_GT(model.weights[0], 0.0);
  EXPECT_LE(history.back(), history.front());
  for (const auto &ex : SeparableExamples(42, 200)) {
    const double gold = model.Score(ex.gold);
    for (const auto &neg : ex.negatives) EXPECT_GT(gold, model.Score(neg));
  }
}

TEST(TrainRankerTest, OneDimensionalPairs) {
  std::vector<RankingExample> data;
  Rng rng(43);
  for (int q = 0; q < 30; ++q) {
    RankingExample ex;
    ex.gold_id = "g";
    ex.gold[3] = 1.0 + rng.Uniform();
    ex.negative_ids = {"n"};
    ex.negatives = {ElFeatureVector{}};
    ex.negatives[0][3] = rng.Uniform();
    data.push_back(ex);
  }
  RankModel model = TrainRanker(data, {});
  EXPECT_GT(model.weights[3], 0.0);
  for (const auto &ex : data) {
    EXPECT_GT(model.Score(ex.gold), model.Score(ex.negatives[0]));
  }
}

TEST(TrainRankerTest, HeavyRegularizationGivesZero) {
  RankerOptions options;
  options.l2 = 1e6;
  RankModel model = TrainRanker(SeparableExamples(44, 20), options);
  for (double w : model.weights) EXPECT_LE(std::abs(w), 1e-3);
}

TEST(TrainRankerTest, DeterministicAndValidated) {
  const auto data = SeparableExamples(45, 20);
  EXPECT_EQ(TrainRanker(data, {}).ToJson().dump(),
            TrainRanker(data, {}).ToJson().dump());
  EXPECT_THROW(TrainRanker({}, {}), InvalidArgument);
  RankingExample lonely;
  lonely.gold_id = "g";
  EXPECT_THROW(TrainRanker({lonely}, {}), InvalidArgument);
}

TEST(PairwiseObjectiveTest, SubgradientMatchesFiniteDifferences) {
  Rng rng(46);
  int checked = 0;
  while (checked < 20) {
    std::vector<ElFeatureVector> diffs;
    for (int i = 0; i < 6; ++i) diffs.push_back(RandomVector(rng));
    ElFeatureVector w = RandomVector(rng);
    bool near_kink = false;
    for (const auto &d : diffs) {
      double m = 0.0;
      for (int k = 0; k < kElFeatureCount; ++k) m += w[k] * d[k];
      if (std::abs(1.0 - m) < 1e-2) near_kink = true;
    }
    if (near_kink) continue;
    ++checked;
    const double l2 = 0.1;
    ElFeatureVector grad;
    PairwiseObjective(w, diffs, l2, &grad);
    const double h = 1e-5;
    for (int k = 0; k < kElFeatureCount; ++k) {
      ElFeatureVector hi = w, lo = w;
      hi[k] += h;
      lo[k] -= h;
      const double numeric = (PairwiseObjective(hi, diffs, l2, nullptr) -
                              PairwiseObjective(lo, diffs, l2, nullptr)) /
                             (2 * h);
      const double rel = std::abs(grad[k] - numeric) /
                         std::max({std::abs(grad[k]), std::abs(numeric), 1.0});
      EXPECT_LE(rel, 1e-4);
    }
  }
}

TEST(PairwiseObjectiveTest, HandValue) {
  ElFeatureVector w{}, d{};
  w[0] = 0.5;
  d[0] = 1.0;
  // hinge 0.5 plus 0.1 * 0.25.
  EXPECT_NEAR(PairwiseObjective(w, {d}, 0.1, nullptr), 0.525, 1e-15);
}

// Brute force: score every candidate (dot product rounded once), then sort
// by (-score, id).
std::vector<std::pair<std::string, double>> BruteRank(
    const ElFeatureVector &w, const std::vector<ScoredInput> &in) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto &c : in) {
    long double s = 0.0L;
    for (int k = 0; k < kElFeatureCount; ++k) {
      s += static_cast<long double>(w[k]) * c.features[k];
    }
    out.emplace_back(c.entity_id, static_cast<double>(s));
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return std::tie(b.second, a.first) < std::tie(a.second, b.first);
  });
  return out;
}

std::vector<ScoredInput> RandomCandidates(Rng &rng) {
  std::vector<ScoredInput> in;
  const int n = static_cast<int>(rng.UniformRange(1, 6));
  for (int i = 0; i < n; ++i) {
    ScoredInput c;
    c.entity_id = "E" + std::to_string(rng.UniformInt(1000));
    for (double &x : c.features) x = static_cast<double>(rng.UniformInt(3));
    in.push_back(c);
  }
  return in;
}

TEST(RankCandidatesTest, MatchesBruteForceSort) {
  Rng rng(47);
  for (int round = 0; round < 500; ++round) {
    RankModel model;
    for (double &x : model.weights) {
      x = round % 2 == 0 ? static_cast<double>(rng.UniformRange(-1, 1))
                         : rng.Normal();
    }
    const auto in = RandomCandidates(rng);
    const auto got = RankCandidates(model, in);
    const auto expect = BruteRank(model.weights, in);
    ASSERT_EQ(got.size(), expect.size());
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].entity_id, expect[i].first);
      EXPECT_EQ(got[i].score, expect[i].second);
    }
  }
}

TEST(RankCandidatesTest, TopOneInvariances) {
  Rng rng(48);
  for (int round = 0; round < 400; ++round) {
    RankModel model;
    for (double &x : model.weights) {
      x = round % 2 == 0 ? static_cast<double>(rng.UniformRange(-1, 1))
                         : rng.Normal();
    }
    auto in = RandomCandidates(rng);
    const auto base = RankCandidates(model, in);

    RankModel scaled = model;
    const double c = 0.1 + 10 * rng.Uniform();
    for (double &x : scaled.weights) x *= c;
    EXPECT_EQ(RankCandidates(scaled, in)[0].entity_id, base[0].entity_id);

    // Shifting the normalization mean adds a constant to every score.
    RankModel shifted = model;
    for (double &x : shifted.mean) {
      x = round % 2 == 0 ? static_cast<double>(rng.UniformRange(-3, 3))
                         : rng.Normal();
    }
    EXPECT_EQ(RankCandidates(shifted, in)[0].entity_id, base[0].entity_id);

    rng.Shuffle(in);
    const auto permuted = RankCandidates(model, in);
    ASSERT_EQ(permuted.size(), base.size());
    for (size_t i = 0; i < base.size(); ++i) {
      EXPECT_EQ(permuted[i].entity_id, base[i].entity_id);
    }
  }
}

TEST(RankCandidatesTest, DegenerateCases) {
  RankModel zero;
  std::vector<ScoredInput> in = {{"E3", {}}, {"E1", {}}, {"E2", {}}};
  in[0].features[0] = 5;
  const auto ranked = RankCandidates(zero, in);
  EXPECT_EQ(ranked[0].entity_id, "E1");
  EXPECT_EQ(ranked[1].entity_id, "E2");
  EXPECT_EQ(ranked[2].entity_id, "E3");
  const auto single = RankCandidates(zero, {{"E9", {}}});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].entity_id, "E9");
  EXPECT_TRUE(RankCandidates(zero, {}).empty());
}

TEST(RankModelTest, JsonRoundTrip) {
  RankModel model = TrainRanker(SeparableExamples(49, 10), {});
  model.feature_mask = kSemanticFeatures | kNameTextFeatures;
  testing::TempDir dir;
  model.Save(dir / "ranker.json");
  RankModel back = RankModel::Load(dir / "ranker.json");
  EXPECT_EQ(back.ToJson().dump(), model.ToJson().dump());
  EXPECT_EQ(back.weights, model.weights);
  EXPECT_EQ(back.feature_mask, model.feature_mask);

  nlohmann::json j = model.ToJson();
  j["layout"][0] = "other";
  EXPECT_THROW(RankModel::FromJson(j), ModelError);
  j = model.ToJson();
  j["version"] = 99;
  EXPECT_THROW(RankModel::FromJson(j), ModelError);
}

}  // namespace
}  // namespace qedl
