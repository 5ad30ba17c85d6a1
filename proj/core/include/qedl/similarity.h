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

#ifndef QEDL_SIMILARITY_H_
#define QEDL_SIMILARITY_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qedl/corpus.h"
#include "qedl/kg_store.h"

namespace qedl {

// Word vectors. Text format: first line "vocab_size dim", then
// "token v1 ... vd" per line. Tokens are normalized on load.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dim) : dim_(dim) {}

  static EmbeddingTable Load(const std::string &path);
  void Save(const std::string &path) const;

  // Throws InvalidArgument on wrong length or non-finite values.
  void Add(const std::string &term, std::vector<double> vector);
  const std::vector<double> *Find(const std::string &term) const;

  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }

 private:
  int dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<std::string> order_;
};

// u.v / (|u||v|), or 0 when either norm is 0. Throws InvalidArgument on a
// dimension mismatch.
double Cosine(std::span<const double> u, std::span<const double> v);

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

// Best clamped cosine between `term` and any entity term:
//   max_{w' in e} max(0, cos(emb(w), emb(w'))).
// A term without a vector scores 1 if it occurs verbatim in e, else 0.
double TermEntitySimilarity(const std::string &term,
                            const std::vector<std::string> &entity_terms,
                            const EmbeddingTable &emb);

// One summand of the saliency-weighted similarity:
//   idf * sem (k1+1) / (sem + k1(1 - b + b * entity_length / avge)),
// or 0 when sem is 0. Throws InvalidArgument if avge <= 0.
double SaliencyTerm(double idf, double sem, double entity_length,
                    const Bm25Params &params, double avge);

// Saliency-weighted semantic similarity between a question and an entity,
// a BM25-shaped sum over question terms w:
//   IDF(w) * sem(w,e)(k1+1) / (sem(w,e) + k1(1 - b + b|e|/avge))
// with sem from TermEntitySimilarity and |e| = entity_terms.size().
// Throws InvalidArgument if avge <= 0 or entity_terms is empty.
double SemanticSimilarity(const std::vector<std::string> &question_terms,
                          const std::vector<std::string> &entity_terms,
                          const EmbeddingTable &emb, const IdfTable &idf,
                          const Bm25Params &params, double avge);

// log10 of the stored hit count.
double PopularityFeature(const KgEntity &entity);

using SparseVector = std::vector<std::pair<int, double>>;

// Term-count x IDF vectors over the fitted vocabulary, L2-normalized.
class TfidfModel {
 public:
  void Fit(const std::vector<Document> &docs);
  bool fitted() const { return fitted_; }

  // Out-of-vocabulary terms are ignored. Sorted by index.
  SparseVector Transform(const std::vector<std::string> &terms) const;
  // Cosine of the two vectors; 0 if either is empty.
  double Similarity(const std::vector<std::string> &a,
                    const std::vector<std::string> &b) const;

  int vocabulary_size() const { return static_cast<int>(vocab_.size()); }
  const std::vector<std::string> &vocabulary() const { return vocab_; }
  const DocumentFrequencies &document_frequencies() const { return df_; }

  nlohmann::json ToJson() const;
  static TfidfModel FromJson(const nlohmann::json &j);

 private:
  bool fitted_ = false;
  DocumentFrequencies df_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> idf_;
};

// Latent semantic indexing: truncated SVD of the term-document matrix
// whose columns are the TF-IDF vectors of the corpus. Texts are compared
// by the cosine of their projections U_k^T x.
class LsiModel {
 public:
  void Fit(const TfidfModel &tfidf, const std::vector<Document> &docs,
           int rank);
  bool fitted() const { return fitted_; }

  // Rank actually kept: min(requested, numerical rank of the matrix).
  int rank() const { return rank_; }
  // Non-negative and non-increasing.
  const std::vector<double> &singular_values() const {
    return singular_values_;
  }
  // All singular values of the matrix, before truncation.
  const std::vector<double> &full_spectrum() const { return spectrum_; }

  std::vector<double> Project(const SparseVector &x) const;
  double Similarity(const TfidfModel &tfidf, const std::vector<std::string> &a,
                    const std::vector<std::string> &b) const;

  nlohmann::json ToJson() const;
  static LsiModel FromJson(const nlohmann::json &j);

 private:
  bool fitted_ = false;
  int rank_ = 0;
  int vocab_size_ = 0;
  std::vector<double> singular_values_;
  std::vector<double> spectrum_;
  // vocab_size x rank, row-major.
  std::vector<double> basis_;
};

struct LdaOptions {
  int topics = 50;
  // Negative means 50 / topics.
  double alpha = -1.0;
  double beta = 0.01;
  int train_sweeps = 500;
  int infer_sweeps = 50;
  uint64_t seed = 1;
};

// Latent Dirichlet allocation trained with collapsed Gibbs sampling.
// Stopwords are removed before training and inference.
class LdaModel {
 public:
  void Fit(const std::vector<Document> &docs,
           const std::unordered_set<std::string> &stopwords,
           const LdaOptions &options);
  bool fitted() const { return fitted_; }

  // Topic proportions of a text (a probability vector). Inference runs
  // `infer_sweeps` fold-in sweeps with the word-topic counts fixed and a
  // generator reseeded from the model seed, so equal inputs give equal
  // outputs. Proportions are averaged over the second half of the sweeps.
  std::vector<double> Infer(const std::vector<std::string> &terms) const;
  // Cosine of topic proportions; 0 if either text has no usable terms.
  double Similarity(const std::vector<std::string> &a,
                    const std::vector<std::string> &b) const;

  int topics() const { return options_.topics; }
  double alpha() const { return alpha_; }
  const LdaOptions &options() const { return options_; }
  // Phi(w | k) for inspection.
  double TopicWordProbability(int topic, const std::string &term) const;

  nlohmann::json ToJson() const;
  static LdaModel FromJson(const nlohmann::json &j);

 private:
  std::vector<int> Ids(const std::vector<std::string> &terms) const;

  bool fitted_ = false;
  LdaOptions options_;
  double alpha_ = 0.0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  std::unordered_set<std::string> stopwords_;
  // vocab x topics, row-major.
  std::vector<int> word_topic_;
  std::vector<int> topic_totals_;
};

struct SimilarityOptions {
  int lsi_rank = 100;
  LdaOptions lda;
};

// Every corpus-fitted model the linking features need.
struct CorpusModels {
  static constexpr int kFormatVersion = 1;

  DocumentFrequencies idf;
  TfidfModel tfidf;
  LsiModel lsi;
  LdaModel lda;

  bool fitted() const { return tfidf.fitted() && lsi.fitted() && lda.fitted(); }

  static CorpusModels Fit(const std::vector<Document> &docs,
                          const std::unordered_set<std::string> &stopwords,
                          const SimilarityOptions &options);

  // Each throws Error when the models are not fitted.
  double TfidfSimilarity(const std::vector<std::string> &a,
                         const std::vector<std::string> &b) const;
  double LsiSimilarity(const std::vector<std::string> &a,
                       const std::vector<std::string> &b) const;
  double LdaSimilarity(const std::vector<std::string> &a,
                       const std::vector<std::string> &b) const;

  nlohmann::json ToJson() const;
  static CorpusModels FromJson(const nlohmann::json &j);
  void Save(const std::string &path) const;
  static CorpusModels Load(const std::string &path);
};

}  // namespace qedl

#endif  // QEDL_SIMILARITY_H_
