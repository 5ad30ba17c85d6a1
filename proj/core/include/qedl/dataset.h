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

#ifndef QEDL_DATASET_H_
#define QEDL_DATASET_H_

#include <compare>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qedl {

// Half-open character span [start, end) in scalar-value offsets.
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool Overlaps(const Span &other) const {
    return start < other.end && other.start < end;
  }
  auto operator<=>(const Span &) const = default;
};

// Gold annotation of one mention.
struct GoldEntity {
  Span span;
  std::string mention;
  std::string kb_id;
};

struct Question {
  std::string id;
  std::string text;
  std::vector<GoldEntity> entities;

  std::vector<Span> GoldSpans() const;

  // Validates offsets against the text and that `mention` equals the slice.
  // Throws InvalidArgument naming the offending field.
  static Question FromJson(const nlohmann::json &record);
  nlohmann::ordered_json ToJson() const;
};

// questions.jsonl: {"id", "text", "entities": [{"start", "end", "mention",
// "kb_id"}]}. Throws ParseError naming the line.
std::vector<Question> LoadQuestions(const std::string &path);
void WriteQuestions(const std::string &path,
                    const std::vector<Question> &questions);

// Writes one compact JSON value per line.
void WriteJsonLines(const std::string &path,
                    const std::vector<nlohmann::ordered_json> &records);

// Calls `visit(record)` for each non-blank line. Bad JSON, and
// InvalidArgument or JSON type errors thrown by `visit`, become ParseError
// naming the file and line.
void ForEachJsonLine(const std::string &path,
                     const std::function<void(const nlohmann::json &)> &visit);

// Reads JSON Lines, skipping blank lines. Throws ParseError on bad JSON.
std::vector<nlohmann::json> ReadJsonLines(const std::string &path);

}  // namespace qedl

#endif  // QEDL_DATASET_H_
