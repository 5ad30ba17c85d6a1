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
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

EmbeddingTable EmbeddingTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
  std::istringstream header(line);
  long long vocab = -1;
  int dim = -1;
  if (!(header >> vocab >> dim) || vocab < 0 || dim <= 0) {
    throw ParseError(path, 1, "header must be \"vocab_size dim\"");
  }
  EmbeddingTable table(dim);
  int line_no = 1;
  long long rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string token;
    row >> token;
    std::vector<double> v;
    v.reserve(dim);
    double x;
    while (row >> x) v.push_back(x);
    if (!row.eof()) throw ParseError(path, line_no, "non-numeric component");
    try {
      table.Add(Normalize(token), std::move(v));
    } catch (const InvalidArgument &e) {
      throw ParseError(path, line_no, e.what());
    }
    ++rows;
  }
  if (rows != vocab) {
    throw ParseError(path, line_no,
                     "header announces " + std::to_string(vocab) +
                         " vectors, file has " + std::to_string(rows));
  }
  return table;
}

void EmbeddingTable::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << order_.size() << ' ' << dim_ << '\n';
  char buf[32];
  for (const auto &term : order_) {
    out << term;
    for (double x : vectors_.at(term)) {
      std::snprintf(buf, sizeof(buf), " %.6f", x);
      out << buf;
    }
    out << '\n';
  }
}

void EmbeddingTable::Add(const std::string &term, std::vector<double> vector) {
  if (static_cast<int>(vector.size()) != dim_) {
    throw InvalidArgument("vector for '" + term + "' has " +
                          std::to_string(vector.size()) + " components, want " +
                          std::to_string(dim_));
  }
  for (double x : vector) {
    if (!std::isfinite(x)) {
      throw InvalidArgument("non-finite component in vector for '" + term +
                            "'");
    }
  }
  auto [it, inserted] = vectors_.emplace(term, std::move(vector));
  if (inserted) {
    order_.push_back(term);
  }
}

const std::vector<double> *EmbeddingTable::Find(const std::string &term) const {
  auto it = vectors_.find(term);
  return it == vectors_.end() ? nullptr : &it->second;
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("cosine of vectors with different dimensions");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double TermEntitySimilarity(const std::string &term,
                            const std::vector<std::string> &entity_terms,
                            const EmbeddingTable &emb) {
  const std::vector<double> *u = emb.Find(term);
  if (!u) {
    return std::find(entity_terms.begin(), entity_terms.end(), term) !=
                   entity_terms.end()
               ? 1.0
               : 0.0;
  }
  double best = 0.0;
  for (const auto &other : entity_terms) {
    const std::vector<double> *v = emb.Find(other);
    if (!v) continue;
    best = std::max(best, std::clamp(Cosine(*u, *v), 0.0, 1.0));
  }
  return best;
}

double SaliencyTerm(double idf, double sem, double entity_length,
                    const Bm25Params &params, double avge) {
  if (!(avge > 0.0)) throw InvalidArgument("avge must be positive");
  if (sem == 0.0) return 0.0;
  const double length_norm =
      params.k1 * (1.0 - params.b + params.b * entity_length / avge);
  return idf * sem * (params.k1 + 1.0) / (sem + length_norm);
}

double SemanticSimilarity(const std::vector<std::string> &question_terms,
                          const std::vector<std::string> &entity_terms,
                          const EmbeddingTable &emb, const IdfTable &idf,
                          const Bm25Params &params, double avge) {
  if (!(avge > 0.0)) throw InvalidArgument("avge must be positive");
  if (entity_terms.empty()) throw InvalidArgument("entity has no terms");
  const double length = static_cast<double>(entity_terms.size());
  double total = 0.0;
  for (const auto &w : question_terms) {
    const double sem = TermEntitySimilarity(w, entity_terms, emb);
    total += SaliencyTerm(idf.Idf(w), sem, length, params, avge);
  }
  return total;
}

double PopularityFeature(const KgEntity &entity) {
  return std::log10(static_cast<double>(std::max<int64_t>(entity.popularity, 1)));
}

void TfidfModel::Fit(const std::vector<Document> &docs) {
  df_ = DocumentFrequencies(docs);
  std::set<std::string> terms;
  for (const auto &doc : docs) terms.insert(doc.begin(), doc.end());
  vocab_.assign(terms.begin(), terms.end());
  index_.clear();
  idf_.clear();
  for (size_t i = 0; i < vocab_.size(); ++i) {
    index_[vocab_[i]] = static_cast<int>(i);
    idf_.push_back(df_.Idf(vocab_[i]));
  }
  fitted_ = true;
}

SparseVector TfidfModel::Transform(const std::vector<std::string> &terms) const {
  if (!fitted_) throw Error("TF-IDF model is not fitted");
  std::map<int, double> counts;
  for (const auto &t : terms) {
    auto it = index_.find(t);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  double norm = 0.0;
  for (const auto &[id, count] : counts) {
    double w = count * idf_[id];
    if (w == 0.0) continue;
    out.emplace_back(id, w);
    norm += w * w;
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto &entry : out) entry.second /= norm;
  }
  return out;
}

double TfidfModel::Similarity(const std::vector<std::string> &a,
                              const std::vector<std::string> &b) const {
  SparseVector x = Transform(a);
  SparseVector y = Transform(b);
  if (x.empty() || y.empty()) return 0.0;
  double dot = 0.0;
  size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first == y[j].first) {
      dot += x[i++].second * y[j++].second;
    } else if (x[i].first < y[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return dot;
}

nlohmann::json TfidfModel::ToJson() const {
  return {{"fitted", fitted_}, {"df", df_.ToJson()}};
}

TfidfModel TfidfModel::FromJson(const nlohmann::json &j) {
  TfidfModel model;
  if (!j.at("fitted").get<bool>()) return model;
  // The vocabulary is exactly the df table's key set.
  model.df_ = DocumentFrequencies::FromJson(j.at("df"));
  std::set<std::string> terms;
  for (const auto &[term, df] : model.df_.table()) terms.insert(term);
  model.vocab_.assign(terms.begin(), terms.end());
  for (size_t i = 0; i < model.vocab_.size(); ++i) {
    model.index_[model.vocab_[i]] = static_cast<int>(i);
    model.idf_.push_back(model.df_.Idf(model.vocab_[i]));
  }
  model.fitted_ = true;
  return model;
}

CorpusModels CorpusModels::Fit(const std::vector<Document> &docs,
                               const std::unordered_set<std::string> &stopwords,
                               const SimilarityOptions &options) {
  if (docs.empty()) throw InvalidArgument("empty similarity corpus");
  CorpusModels models;
  models.tfidf.Fit(docs);
  models.idf = models.tfidf.document_frequencies();
  models.lsi.Fit(models.tfidf, docs, options.lsi_rank);
  models.lda.Fit(docs, stopwords, options.lda);
  return models;
}

namespace {

void RequireFitted(bool fitted, const char *what) {
  if (!fitted) {
    throw Error(std::string(what) +
                " model is not fitted; run fit-similarity or set a corpus path");
  }
}

}  // namespace

double CorpusModels::TfidfSimilarity(const std::vector<std::string> &a,
                                     const std::vector<std::string> &b) const {
  RequireFitted(tfidf.fitted(), "TF-IDF");
  return tfidf.Similarity(a, b);
}

double CorpusModels::LsiSimilarity(const std::vector<std::string> &a,
                                   const std::vector<std::string> &b) const {
  RequireFitted(lsi.fitted() && tfidf.fitted(), "LSI");
  return lsi.Similarity(tfidf, a, b);
}

double CorpusModels::LdaSimilarity(const std::vector<std::string> &a,
                                   const std::vector<std::string> &b) const {
  RequireFitted(lda.fitted(), "LDA");
  return lda.Similarity(a, b);
}

nlohmann::json CorpusModels::ToJson() const {
  return {{"format", "qedl-similarity"},
          {"version", kFormatVersion},
          {"tfidf", tfidf.ToJson()},
          {"lsi", lsi.ToJson()},
          {"lda", lda.ToJson()}};
}

CorpusModels CorpusModels::FromJson(const nlohmann::json &j) {
  try {
    if (j.value("format", "") != "qedl-similarity") {
      throw ModelError("not a similarity model file");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw ModelError("unsupported similarity model version");
    }
    CorpusModels models;
    models.tfidf = TfidfModel::FromJson(j.at("tfidf"));
    models.idf = models.tfidf.document_frequencies();
    models.lsi = LsiModel::FromJson(j.at("lsi"));
    models.lda = LdaModel::FromJson(j.at("lda"));
    return models;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(std::string("malformed similarity model: ") + e.what());
  }
}

void CorpusModels::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << ToJson().dump() << '\n';
}

CorpusModels CorpusModels::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open similarity models " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(path + ": " + e.what());
  }
  return FromJson(j);
}

}  // namespace qedl
