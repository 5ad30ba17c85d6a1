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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qedl/errors.h"
#include "qedl/similarity.h"

namespace qedl {

void LsiModel::Fit(const TfidfModel &tfidf, const std::vector<Document> &docs,
                   int rank) {
  if (!tfidf.fitted()) throw Error("LSI needs a fitted TF-IDF model");
  if (rank < 1) throw InvalidArgument("LSI rank must be >= 1");
  vocab_size_ = tfidf.vocabulary_size();
  const int num_docs = static_cast<int>(docs.size());
  if (vocab_size_ == 0 || num_docs == 0) {
    throw InvalidArgument("LSI needs a non-empty corpus");
  }

  Eigen::MatrixXd terms_by_docs = Eigen::MatrixXd::Zero(vocab_size_, num_docs);
  for (int d = 0; d < num_docs; ++d) {
    for (const auto &[id, w] : tfidf.Transform(docs[d])) {
      terms_by_docs(id, d) = w;
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(terms_by_docs, Eigen::ComputeThinU);
  const Eigen::VectorXd &sigma = svd.singularValues();

  spectrum_.assign(sigma.data(), sigma.data() + sigma.size());
  const double tolerance = sigma.size() == 0
                               ? 0.0
                               : sigma(0) * std::max(vocab_size_, num_docs) *
                                     std::numeric_limits<double>::epsilon();
  int numerical_rank = 0;
  while (numerical_rank < sigma.size() && sigma(numerical_rank) > tolerance) {
    ++numerical_rank;
  }
  rank_ = std::min(rank, numerical_rank);

  singular_values_.assign(sigma.data(), sigma.data() + rank_);
  basis_.assign(static_cast<size_t>(vocab_size_) * rank_, 0.0);
  const Eigen::MatrixXd &u = svd.matrixU();
  for (int w = 0; w < vocab_size_; ++w) {
    for (int k = 0; k < rank_; ++k) basis_[w * rank_ + k] = u(w, k);
  }
  fitted_ = true;
}

std::vector<double> LsiModel::Project(const SparseVector &x) const {
  if (!fitted_) throw Error("LSI model is not fitted");
  std::vector<double> out(rank_, 0.0);
  for (const auto &[id, value] : x) {
    if (id < 0 || id >= vocab_size_) continue;
    const double *row = &basis_[static_cast<size_t>(id) * rank_];
    for (int k = 0; k < rank_; ++k) out[k] += row[k] * value;
  }
  return out;
}

double LsiModel::Similarity(const TfidfModel &tfidf,
                            const std::vector<std::string> &a,
                            const std::vector<std::string> &b) const {
  SparseVector x = tfidf.Transform(a);
  SparseVector y = tfidf.Transform(b);
  if (x.empty() || y.empty()) return 0.0;
  return Cosine(Project(x), Project(y));
}

nlohmann::json LsiModel::ToJson() const {
  return {{"fitted", fitted_},       {"rank", rank_},
          {"vocab_size", vocab_size_}, {"singular_values", singular_values_},
          {"spectrum", spectrum_},   {"basis", basis_}};
}

LsiModel LsiModel::FromJson(const nlohmann::json &j) {
  LsiModel model;
  model.fitted_ = j.at("fitted").get<bool>();
  if (!model.fitted_) return model;
  model.rank_ = j.at("rank").get<int>();
  model.vocab_size_ = j.at("vocab_size").get<int>();
  model.singular_values_ = j.at("singular_values").get<std::vector<double>>();
  model.spectrum_ = j.at("spectrum").get<std::vector<double>>();
  model.basis_ = j.at("basis").get<std::vector<double>>();
  if (model.basis_.size() !=
      static_cast<size_t>(model.vocab_size_) * model.rank_) {
    throw ModelError("LSI basis has the wrong size");
  }
  return model;
}

}  // namespace qedl
