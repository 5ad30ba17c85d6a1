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

#include "qedl/corpus.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

Document TokenizeLine(std::string_view line) {
  Document doc;
  std::istringstream in{std::string(line)};
  std::string raw;
  while (in >> raw) {
    std::string term = Normalize(raw);
    if (term.empty() || term == "_") continue;
    doc.push_back(std::move(term));
  }
  return doc;
}

std::vector<Document> LoadCorpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path);
  std::vector<Document> docs;
  std::string line;
  while (std::getline(in, line)) {
    Document doc = TokenizeLine(line);
    if (!doc.empty()) docs.push_back(std::move(doc));
  }
  return docs;
}

DocumentFrequencies::DocumentFrequencies(const std::vector<Document> &docs)
    : num_docs_(static_cast<int>(docs.size())) {
  for (const auto &doc : docs) {
    std::unordered_set<std::string> seen(doc.begin(), doc.end());
    for (const auto &term : seen) ++df_[term];
  }
}

int DocumentFrequencies::Df(const std::string &term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

double DocumentFrequencies::Idf(const std::string &term) const {
  return std::log((num_docs_ + 1.0) / (Df(term) + 1.0));
}

nlohmann::json DocumentFrequencies::ToJson() const {
  // Sorted for byte-stable output.
  std::map<std::string, int> sorted(df_.begin(), df_.end());
  return {{"num_docs", num_docs_}, {"df", sorted}};
}

DocumentFrequencies DocumentFrequencies::FromJson(const nlohmann::json &j) {
  DocumentFrequencies out;
  out.num_docs_ = j.at("num_docs").get<int>();
  for (auto it = j.at("df").begin(); it != j.at("df").end(); ++it) {
    out.df_[it.key()] = it.value().get<int>();
  }
  return out;
}

}  // namespace qedl
