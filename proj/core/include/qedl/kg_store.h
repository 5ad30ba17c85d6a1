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

#ifndef QEDL_KG_STORE_H_
#define QEDL_KG_STORE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qedl {

// A knowledge-graph entry.
struct KgEntity {
  std::string id;
  std::string name;
  std::vector<std::string> aliases;
  // Attribute name/value pairs in file order.
  std::vector<std::pair<std::string, std::string>> attributes;
  // Search hit count; at least 1 once ingested.
  int64_t popularity = 1;

  // Parses one KG record. Throws InvalidArgument on schema violations.
  static KgEntity FromJson(const nlohmann::ordered_json &record);
  nlohmann::ordered_json ToJson() const;
};

// Indexed knowledge graph plus the lexicon and stopword list used by
// segmentation and discovery. Populate with the Load*/Add* methods, then
// treat as read-only; concurrent const access is safe.
class KgStore {
 public:
  using IdSet = std::set<std::string>;

  KgStore() = default;

  // Reads JSON Lines, one entity per line. Blank lines are skipped.
  // Throws ParseError (with line number) on malformed records and on
  // duplicate ids.
  void LoadEntities(const std::string &path);

  // "term" or "term<TAB>pos" per line.
  void LoadLexicon(const std::string &path);

  // One term per line.
  void LoadStopwords(const std::string &path);

  // Throws InvalidArgument on duplicate id or empty name.
  void AddEntity(KgEntity entity);
  void AddLexiconEntry(std::string_view term, std::string_view pos = "");
  void AddStopword(std::string_view term);

  // Ids whose name or alias normalizes to Normalize(surface).
  const IdSet &LookupSurface(std::string_view surface) const;

  // Same, for a key that is already normalized.
  const IdSet &LookupNormalized(const std::string &key) const;

  const KgEntity *Find(std::string_view id) const;

  bool InLexicon(std::string_view term) const;
  // POS tag of a normalized lexicon key; empty optional if absent, empty
  // string if the entry carries no tag.
  std::optional<std::string> LexiconPos(const std::string &key) const;
  // Length in scalar values of the longest normalized lexicon key.
  int max_lexicon_length() const { return max_lexicon_length_; }

  bool IsStopword(std::string_view term) const;
  const std::unordered_set<std::string> &stopwords() const {
    return stopwords_;
  }

  // Entities ordered by id.
  const std::map<std::string, KgEntity, std::less<>> &entities() const {
    return entities_;
  }
  const std::map<std::string, IdSet, std::less<>> &surface_index() const {
    return surface_index_;
  }
  size_t size() const { return entities_.size(); }
  size_t lexicon_size() const { return lexicon_.size(); }

 private:
  std::map<std::string, KgEntity, std::less<>> entities_;
  std::map<std::string, IdSet, std::less<>> surface_index_;
  std::unordered_map<std::string, std::string> lexicon_;
  std::unordered_set<std::string> stopwords_;
  int max_lexicon_length_ = 0;
};

}  // namespace qedl

#endif  // QEDL_KG_STORE_H_
