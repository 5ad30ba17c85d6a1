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

#include "qedl/similarity.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qedl/errors.h"
#include "qedl/random.h"
#include "test_util.h"

namespace qedl {
namespace {

TEST(CosineTest, Examples) {
  std::vector<double> x = {1, 0}, y = {0, 1};
  EXPECT_DOUBLE_EQ(Cosine(x, x), 1.0);
  EXPECT_DOUBLE_EQ(Cosine(x, y), 0.0);
  std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  EXPECT_NEAR(Cosine(a, b), 32.0 / std::sqrt(14.0 * 77.0), 1e-15);
  EXPECT_NEAR(Cosine(a, b), 0.974631846, 1e-9);
  std::vector<double> zero = {0, 0, 0};
  EXPECT_EQ(Cosine(a, zero), 0.0);
  EXPECT_THROW(Cosine(a, x), InvalidArgument);
}

TEST(CosineTest, SymmetricAndBounded) {
  Rng rng(31);
  for (int round = 0; round < 200; ++round) {
    std::vector<double> u(5), v(5);
    for (auto &x : u) x = rng.Normal();
    for (auto &x : v) x = rng.Normal();
    EXPECT_EQ(Cosine(u, v), Cosine(v, u));
    EXPECT_LE(std::abs(Cosine(u, v)), 1.0 + 1e-12);
  }
}

TEST(SaliencyTermTest, HandComputedCase) {
  // IDF = 1, sem = 1, |e| = avge: 1 * 2.5 / (1 + 1.5 * 1) = 1.
  EXPECT_NEAR(SaliencyTerm(1.0, 1.0, 4.0, {}, 4.0), 1.0, 1e-12);
  EXPECT_EQ(SaliencyTerm(1.0, 0.0, 4.0, {}, 4.0), 0.0);
  EXPECT_THROW(SaliencyTerm(1.0, 1.0, 4.0, {}, 0.0), InvalidArgument);
}

TEST(SaliencyTermTest, MonotoneInSem) {
  for (double len : {1.0, 3.0, 9.0}) {
    double prev = -1.0;
    for (double sem = 0.0; sem <= 1.0; sem += 0.05) {
      const double v = SaliencyTerm(0.7, sem, len, {}, 3.0);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

// One-hot vectors make sem() the exact-match indicator.
EmbeddingTable IndicatorEmbeddings(const std::vector<std::string> &vocab) {
  EmbeddingTable emb(static_cast<int>(vocab.size()));
  for (size_t i = 0; i < vocab.size(); ++i) {
    std::vector<double> v(vocab.size(), 0.0);
    v[i] = 1.0;
    emb.Add(vocab[i], v);
  }
  return emb;
}

// Okapi BM25 with binary term frequency, written out directly.
double BinaryBm25(const std::vector<std::string> &query,
                  const std::vector<std::string> &doc, const IdfTable &idf,
                  double k1, double b, double avgdl) {
  double score = 0.0;
  for (const auto &w : query) {
    const bool tf = std::find(doc.begin(), doc.end(), w) != doc.end();
    if (!tf) continue;
    score += idf.Idf(w) * (1.0 * (k1 + 1.0)) /
             (1.0 + k1 * (1.0 - b + b * doc.size() / avgdl));
  }
  return score;
}

TEST(SemanticSimilarityTest, IndicatorEmbeddingsGiveBinaryBm25) {
  const std::vector<std::string> vocab = {"甲", "乙", "丙", "丁", "戊", "己", "庚", "辛"};
  EmbeddingTable emb = IndicatorEmbeddings(vocab);
  Rng rng(32);
  for (int round = 0; round < 200; ++round) {
    IdfTable idf;
    idf.set_num_docs(50);
    for (const auto &w : vocab) idf.Set(w, static_cast<int>(rng.UniformInt(51)));
    std::vector<std::string> q, e;
    const int nq = static_cast<int>(rng.UniformRange(1, 5));
    const int ne = static_cast<int>(rng.UniformRange(1, 6));
    for (int i = 0; i < nq; ++i) q.push_back(rng.Pick(vocab));
    for (int i = 0; i < ne; ++i) e.push_back(rng.Pick(vocab));
    Bm25Params params{0.5 + 1.5 * rng.Uniform(), rng.Uniform()};
    const double avge = 1.0 + 5.0 * rng.Uniform();
    EXPECT_NEAR(SemanticSimilarity(q, e, emb, idf, params, avge),
                BinaryBm25(q, e, idf, params.k1, params.b, avge), 1e-12);
  }
}

TEST(SemanticSimilarityTest, DegenerateCases) {
  EmbeddingTable emb = IndicatorEmbeddings({"甲", "乙"});
  IdfTable idf;
  idf.set_num_docs(3);
  EXPECT_EQ(SemanticSimilarity({"甲"}, {"乙"}, emb, idf, {}, 1.0), 0.0);
  EXPECT_THROW(SemanticSimilarity({"甲"}, {"乙"}, emb, idf, {}, 0.0),
               InvalidArgument);
  EXPECT_THROW(SemanticSimilarity({"甲"}, {}, emb, idf, {}, 1.0),
               InvalidArgument);
}

TEST(TermEntitySimilarityTest, MissingVectors) {
  EmbeddingTable emb(2);
  emb.Add("甲", {1.0, 0.0});
  emb.Add("乙", {-1.0, 0.0});
  EXPECT_EQ(TermEntitySimilarity("丙", {"丙"}, emb), 1.0);
  EXPECT_EQ(TermEntitySimilarity("丙", {"甲"}, emb), 0.0);
  // Negative cosines clamp to 0.
  EXPECT_EQ(TermEntitySimilarity("甲", {"乙"}, emb), 0.0);
  EXPECT_EQ(TermEntitySimilarity("甲", {"乙", "甲"}, emb), 1.0);
}

TEST(PopularityFeatureTest, Log10OfHits) {
  KgEntity e;
  e.popularity = 1370;
  EXPECT_NEAR(PopularityFeature(e), 3.1367, 1e-4);
  e.popularity = 447;
  EXPECT_NEAR(PopularityFeature(e), 2.6503, 1e-4);
  e.popularity = 1;
  EXPECT_EQ(PopularityFeature(e), 0.0);
}

TEST(EmbeddingTableTest, SaveLoadRoundTrip) {
  testing::TempDir dir;
  EmbeddingTable emb(3);
  emb.Add("甲", {0.5, -0.25, 1.0});
  emb.Add("ABC", {0.0, 0.0, 2.0});
  emb.Save(dir / "emb.txt");
  EmbeddingTable back = EmbeddingTable::Load(dir / "emb.txt");
  EXPECT_EQ(back.dim(), 3);
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(*back.Find("甲"), (std::vector<double>{0.5, -0.25, 1.0}));
  // Terms are normalized on load.
  EXPECT_NE(back.Find("abc"), nullptr);
}

TEST(EmbeddingTableTest, Errors) {
  testing::TempDir dir;
  testing::WriteFile(dir / "bad.txt", "2 2\n甲 1 0\n");
  EXPECT_THROW(EmbeddingTable::Load(dir / "bad.txt"), Error);
  testing::WriteFile(dir / "short.txt", "1 2\n甲 1\n");
  EXPECT_THROW(EmbeddingTable::Load(dir / "short.txt"), Error);
  EmbeddingTable emb(2);
  EXPECT_THROW(emb.Add("x", {1.0}), InvalidArgument);
  EXPECT_THROW(emb.Add("x", {1.0, NAN}), InvalidArgument);
}

TEST(TfidfTest, HandComputedThreeDocuments) {
  std::vector<Document> docs = {{"a", "b", "a"}, {"b", "c"}, {"c", "d"}};
  TfidfModel model;
  model.Fit(docs);
  // IDF = ln((N + 1) / (df + 1)) with N = 3.
  const double ia = std::log(4.0 / 2.0), ib = std::log(4.0 / 3.0);
  const double d1_norm = std::sqrt(4 * ia * ia + ib * ib);
  const double d2_norm = std::sqrt(2.0) * ib;
  EXPECT_NEAR(model.Similarity(docs[0], docs[1]),
              ib * ib / (d1_norm * d2_norm), 1e-12);
  EXPECT_NEAR(model.Similarity(docs[0], docs[0]), 1.0, 1e-12);
  EXPECT_EQ(model.Similarity(docs[0], docs[2]), 0.0);
  // Out-of-vocabulary terms are ignored.
  EXPECT_NEAR(model.Similarity({"a", "zzz"}, {"a"}), 1.0, 1e-12);
  EXPECT_EQ(model.Similarity({"zzz"}, {"zzz"}), 0.0);
}

// 8 documents over 10 terms.
std::vector<Document> ToyCorpus() {
  return {{"t0", "t1", "t1", "t2"}, {"t1", "t3", "t4"},
          {"t0", "t5", "t5"},       {"t2", "t6", "t7", "t7"},
          {"t3", "t8", "t9"},       {"t4", "t6", "t9", "t0"},
          {"t8", "t2", "t5", "t1"}, {"t7", "t9", "t9", "t3", "t6"}};
}

// Singular values by one-sided Jacobi rotations on a dense matrix.
std::vector<double> JacobiSingularValues(std::vector<std::vector<double>> cols) {
  const size_t n = cols.size();
  const size_t m = cols[0].size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (size_t i = 0; i < m; ++i) {
          alpha += cols[p][i] * cols[p][i];
          beta += cols[q][i] * cols[q][i];
          gamma += cols[p][i] * cols[q][i];
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = c * t;
        for (size_t i = 0; i < m; ++i) {
          const double xp = cols[p][i], xq = cols[q][i];
          cols[p][i] = c * xp - s * xq;
          cols[q][i] = s * xp + c * xq;
        }
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<double> sv;
  for (const auto &c : cols) {
    double norm = 0;
    for (double x : c) norm += x * x;
    sv.push_back(std::sqrt(norm));
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

TEST(LsiTest, SingularValuesMatchDenseOracle) {
  auto docs = ToyCorpus();
  TfidfModel tfidf;
  tfidf.Fit(docs);
  ASSERT_EQ(tfidf.vocabulary_size(), 10);
  std::vector<std::vector<double>> cols;
  for (const auto &d : docs) {
    std::vector<double> col(10, 0.0);
    for (auto [i, v] : tfidf.Transform(d)) col[i] = v;
    cols.push_back(col);
  }
  std::vector<double> expect = JacobiSingularValues(cols);
  LsiModel lsi;
  lsi.Fit(tfidf, docs, 100);
  ASSERT_EQ(lsi.rank(), 8);
  ASSERT_EQ(lsi.singular_values().size(), expect.size());
  for (size_t k = 0; k < expect.size(); ++k) {
    EXPECT_NEAR(lsi.singular_values()[k], expect[k], 1e-8);
  }
}

TEST(LsiTest, TruncatedSpectrumIsOrdered) {
  auto docs = ToyCorpus();
  TfidfModel tfidf;
  tfidf.Fit(docs);
  LsiModel lsi;
  lsi.Fit(tfidf, docs, 3);
  ASSERT_EQ(lsi.rank(), 3);
  const auto &sv = lsi.singular_values();
  for (size_t k = 0; k < sv.size(); ++k) {
    EXPECT_GE(sv[k], 0.0);
    if (k > 0) EXPECT_LE(sv[k], sv[k - 1]);
  }
  EXPECT_EQ(lsi.full_spectrum().size(), 8u);
}

TEST(LsiTest, FullRankMatchesTfidf) {
  auto docs = ToyCorpus();
  TfidfModel tfidf;
  tfidf.Fit(docs);
  LsiModel lsi;
  lsi.Fit(tfidf, docs, 100);
  for (const auto &a : docs) {
    EXPECT_NEAR(lsi.Similarity(tfidf, a, a), 1.0, 1e-9);
    for (const auto &b : docs) {
      EXPECT_NEAR(lsi.Similarity(tfidf, a, b), tfidf.Similarity(a, b), 1e-6);
    }
  }
}

TEST(LsiTest, JsonRoundTrip) {
  auto docs = ToyCorpus();
  TfidfModel tfidf;
  tfidf.Fit(docs);
  LsiModel lsi;
  lsi.Fit(tfidf, docs, 4);
  LsiModel back = LsiModel::FromJson(nlohmann::json::parse(lsi.ToJson().dump()));
  EXPECT_EQ(back.rank(), 4);
  EXPECT_NEAR(back.Similarity(tfidf, docs[0], docs[5]),
              lsi.Similarity(tfidf, docs[0], docs[5]), 1e-15);
}

std::vector<Document> TwoTopicCorpus() {
  Rng rng(33);
  const std::vector<std::string> a = {"山", "川", "河", "海", "湖"};
  const std::vector<std::string> b = {"琴", "棋", "书", "画", "诗"};
  std::vector<Document> docs;
  for (int i = 0; i < 60; ++i) {
    const auto &pool = i % 2 == 0 ? a : b;
    Document d;
    for (int k = 0; k < 8; ++k) d.push_back(rng.Pick(pool));
    docs.push_back(d);
  }
  return docs;
}

LdaOptions SmallLda(uint64_t seed) {
  LdaOptions o;
  o.topics = 2;
  o.train_sweeps = 200;
  o.seed = seed;
  return o;
}

TEST(LdaTest, TopicVectorsAreDistributions) {
  LdaModel lda;
  lda.Fit(TwoTopicCorpus(), {}, SmallLda(1));
  for (const auto &text : std::vector<Document>{{"山", "河"}, {"琴"}, {"山", "画", "x"}}) {
    auto theta = lda.Infer(text);
    double sum = 0.0;
    for (double p : theta) {
      EXPECT_GE(p, 0.0);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(LdaTest, SeedDeterministic) {
  LdaModel a, b, c;
  a.Fit(TwoTopicCorpus(), {}, SmallLda(5));
  b.Fit(TwoTopicCorpus(), {}, SmallLda(5));
  c.Fit(TwoTopicCorpus(), {}, SmallLda(6));
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
  EXPECT_EQ(a.Infer({"山", "画"}), b.Infer({"山", "画"}));
  EXPECT_EQ(a.Infer({"山", "画"}), a.Infer({"山", "画"}));
  EXPECT_NE(a.ToJson().dump(), c.ToJson().dump());
}

TEST(LdaTest, SeparatesDisjointTopics) {
  LdaModel lda;
  lda.Fit(TwoTopicCorpus(), {}, SmallLda(2));
  const Document x1 = {"山", "川", "河"}, x2 = {"海", "湖", "山"};
  const Document y1 = {"琴", "棋", "书"};
  EXPECT_NEAR(lda.Similarity(x1, x1), 1.0, 1e-9);
  EXPECT_LT(lda.Similarity(x1, y1), lda.Similarity(x1, x2));
  EXPECT_EQ(lda.Similarity({"unknown"}, x1), 0.0);
}

TEST(LdaTest, StopwordsIgnored) {
  LdaModel lda;
  lda.Fit(TwoTopicCorpus(), {"山"}, SmallLda(3));
  EXPECT_EQ(lda.Similarity({"山"}, {"河"}), 0.0);
  EXPECT_EQ(lda.Infer({"河", "山"}), lda.Infer({"河"}));
}

TEST(CorpusModelsTest, UnfittedModelsThrow) {
  CorpusModels models;
  EXPECT_FALSE(models.fitted());
  EXPECT_THROW(models.TfidfSimilarity({"a"}, {"a"}), Error);
  EXPECT_THROW(models.LsiSimilarity({"a"}, {"a"}), Error);
  EXPECT_THROW(models.LdaSimilarity({"a"}, {"a"}), Error);
}

TEST(CorpusModelsTest, SaveLoadPreservesSimilarities) {
  testing::TempDir dir;
  SimilarityOptions options;
  options.lsi_rank = 3;
  options.lda = SmallLda(4);
  auto docs = ToyCorpus();
  CorpusModels models = CorpusModels::Fit(docs, {}, options);
  models.Save(dir / "m.json");
  CorpusModels back = CorpusModels::Load(dir / "m.json");
  ASSERT_TRUE(back.fitted());
  for (size_t i = 0; i + 1 < docs.size(); ++i) {
    EXPECT_EQ(back.TfidfSimilarity(docs[i], docs[i + 1]),
              models.TfidfSimilarity(docs[i], docs[i + 1]));
    EXPECT_EQ(back.LsiSimilarity(docs[i], docs[i + 1]),
              models.LsiSimilarity(docs[i], docs[i + 1]));
    EXPECT_EQ(back.LdaSimilarity(docs[i], docs[i + 1]),
              models.LdaSimilarity(docs[i], docs[i + 1]));
  }
  EXPECT_EQ(back.ToJson().dump(), models.ToJson().dump());
}

}  // namespace
}  // namespace qedl
