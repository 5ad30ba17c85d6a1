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

#ifndef QEDL_CORPUS_H_
#define QEDL_CORPUS_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace qedl {

// A document is a list of normalized terms.
using Document = std::vector<std::string>;

// Reads a plain-text corpus, one document per line, terms separated by
// whitespace. Each term is normalized; terms that normalize to empty or to
// a bare "_" are dropped.
std::vector<Document> LoadCorpus(const std::string &path);

// Splits one pre-tokenized line the same way LoadCorpus does.
Document TokenizeLine(std::string_view line);

// Document frequencies over a corpus, with the smoothed inverse document
// frequency  idf(w) = ln((N + 1) / (df(w) + 1)).
class DocumentFrequencies {
 public:
  DocumentFrequencies() = default;
  explicit DocumentFrequencies(const std::vector<Document> &docs);

  int num_docs() const { return num_docs_; }
  int Df(const std::string &term) const;
  double Idf(const std::string &term) const;

  const std::unordered_map<std::string, int> &table() const { return df_; }

  // Used by tests to build tables by hand.
  void Set(const std::string &term, int df) { df_[term] = df; }
  void set_num_docs(int n) { num_docs_ = n; }

  nlohmann::json ToJson() const;
  static DocumentFrequencies FromJson(const nlohmann::json &j);

 private:
  int num_docs_ = 0;
  std::unordered_map<std::string, int> df_;
};

using IdfTable = DocumentFrequencies;

}  // namespace qedl

#endif  // QEDL_CORPUS_H_
