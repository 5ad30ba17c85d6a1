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

#include "qedl/kg_store.h"

#include <algorithm>
#include <fstream>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

namespace {

const KgStore::IdSet &EmptyIdSet() {
  static const KgStore::IdSet empty;
  return empty;
}

std::ifstream OpenOrThrow(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

void StripCarriageReturn(std::string &line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

KgEntity KgEntity::FromJson(const nlohmann::ordered_json &record) {
  if (!record.is_object()) throw InvalidArgument("record is not an object");
  KgEntity entity;
  auto id = record.find("id");
  if (id == record.end() || !id->is_string()) {
    throw InvalidArgument("missing string field 'id'");
  }
  entity.id = id->get<std::string>();
  auto name = record.find("name");
  if (name == record.end() || !name->is_string()) {
    throw InvalidArgument("missing string field 'name'");
  }
  entity.name = name->get<std::string>();

  if (auto aliases = record.find("aliases"); aliases != record.end()) {
    if (!aliases->is_array()) throw InvalidArgument("'aliases' must be a list");
    for (const auto &alias : *aliases) {
      if (!alias.is_string()) {
        throw InvalidArgument("'aliases' entries must be strings");
      }
      entity.aliases.push_back(alias.get<std::string>());
    }
  }
  if (auto attrs = record.find("attributes"); attrs != record.end()) {
    if (!attrs->is_object()) {
      throw InvalidArgument("'attributes' must be an object");
    }
    for (auto it = attrs->begin(); it != attrs->end(); ++it) {
      if (!it.value().is_string()) {
        throw InvalidArgument("attribute '" + it.key() + "' is not a string");
      }
      entity.attributes.emplace_back(it.key(), it.value().get<std::string>());
    }
  }
  if (auto pop = record.find("popularity"); pop != record.end()) {
    if (!pop->is_number_integer()) {
      throw InvalidArgument("'popularity' must be an integer");
    }
    int64_t value = pop->get<int64_t>();
    if (value < 0) throw InvalidArgument("'popularity' is negative");
    // A zero hit count carries no more information than one; clamp so the
    // log-popularity feature stays finite.
    entity.popularity = std::max<int64_t>(value, 1);
  }
  return entity;
}

nlohmann::ordered_json KgEntity::ToJson() const {
  nlohmann::ordered_json out;
  out["id"] = id;
  out["name"] = name;
  if (!aliases.empty()) out["aliases"] = aliases;
  if (!attributes.empty()) {
    nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
    for (const auto &[key, value] : attributes) attrs[key] = value;
    out["attributes"] = attrs;
  }
  out["popularity"] = popularity;
  return out;
}

void KgStore::LoadEntities(const std::string &path) {
  std::ifstream in = OpenOrThrow(path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      // ordered_json keeps attribute order as written.
      nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(line);
      AddEntity(KgEntity::FromJson(parsed));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(path, line_no, e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(path, line_no, e.what());
    }
  }
}

void KgStore::LoadLexicon(const std::string &path) {
  std::ifstream in = OpenOrThrow(path);
  std::string line;
  while (std::getline(in, line)) {
    StripCarriageReturn(line);
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      AddLexiconEntry(line);
    } else {
      AddLexiconEntry(std::string_view(line).substr(0, tab),
                      std::string_view(line).substr(tab + 1));
    }
  }
}

void KgStore::LoadStopwords(const std::string &path) {
  std::ifstream in = OpenOrThrow(path);
  std::string line;
  while (std::getline(in, line)) {
    StripCarriageReturn(line);
    AddStopword(line);
  }
}

void KgStore::AddEntity(KgEntity entity) {
  if (entity.name.empty()) {
    throw InvalidArgument("entity '" + entity.id + "' has an empty name");
  }
  if (entities_.contains(entity.id)) {
    throw InvalidArgument("duplicate entity id '" + entity.id + "'");
  }
  if (entity.popularity < 1) entity.popularity = 1;
  surface_index_[Normalize(entity.name)].insert(entity.id);
  for (const auto &alias : entity.aliases) {
    std::string key = Normalize(alias);
    if (!key.empty()) surface_index_[key].insert(entity.id);
  }
  std::string id = entity.id;
  entities_.emplace(std::move(id), std::move(entity));
}

void KgStore::AddLexiconEntry(std::string_view term, std::string_view pos) {
  std::string key = Normalize(term);
  if (key.empty()) return;
  max_lexicon_length_ = std::max(max_lexicon_length_, CodePointLength(key));
  // First tag wins for repeated terms.
  lexicon_.emplace(std::move(key), std::string(pos));
}

void KgStore::AddStopword(std::string_view term) {
  std::string key = Normalize(term);
  if (!key.empty()) stopwords_.insert(std::move(key));
}

const KgStore::IdSet &KgStore::LookupSurface(std::string_view surface) const {
  return LookupNormalized(Normalize(surface));
}

const KgStore::IdSet &KgStore::LookupNormalized(const std::string &key) const {
  auto it = surface_index_.find(key);
  return it == surface_index_.end() ? EmptyIdSet() : it->second;
}

const KgEntity *KgStore::Find(std::string_view id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

bool KgStore::InLexicon(std::string_view term) const {
  std::string key = Normalize(term);
  return !key.empty() && lexicon_.contains(key);
}

std::optional<std::string> KgStore::LexiconPos(const std::string &key) const {
  auto it = lexicon_.find(key);
  if (it == lexicon_.end()) return std::nullopt;
  return it->second;
}

bool KgStore::IsStopword(std::string_view term) const {
  return stopwords_.contains(Normalize(term));
}

}  // namespace qedl
