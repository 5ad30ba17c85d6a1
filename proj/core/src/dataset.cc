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

#include "qedl/dataset.h"

#include <fstream>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

std::vector<Span> Question::GoldSpans() const {
  std::vector<Span> spans;
  spans.reserve(entities.size());
  for (const auto &e : entities) spans.push_back(e.span);
  return spans;
}

Question Question::FromJson(const nlohmann::json &record) {
  if (!record.is_object()) throw InvalidArgument("record is not an object");
  Question q;
  if (!record.contains("id") || !record["id"].is_string()) {
    throw InvalidArgument("missing string field 'id'");
  }
  q.id = record["id"].get<std::string>();
  if (!record.contains("text") || !record["text"].is_string()) {
    throw InvalidArgument("question '" + q.id + "': missing field 'text'");
  }
  q.text = record["text"].get<std::string>();
  std::u32string decoded = DecodeUtf8(q.text);
  const int length = static_cast<int>(decoded.size());

  if (record.contains("entities")) {
    const auto &entities = record["entities"];
    if (!entities.is_array()) {
      throw InvalidArgument("question '" + q.id + "': 'entities' not a list");
    }
    for (const auto &e : entities) {
      if (!e.is_object() || !e.contains("start") || !e.contains("end") ||
          !e["start"].is_number_integer() || !e["end"].is_number_integer()) {
        throw InvalidArgument("question '" + q.id +
                              "': entity needs integer 'start' and 'end'");
      }
      GoldEntity gold;
      gold.span = {e["start"].get<int>(), e["end"].get<int>()};
      if (gold.span.start < 0 || gold.span.end > length ||
          gold.span.start >= gold.span.end) {
        throw InvalidArgument("question '" + q.id + "': span [" +
                              std::to_string(gold.span.start) + "," +
                              std::to_string(gold.span.end) +
                              ") out of bounds");
      }
      std::string slice = Slice(decoded, gold.span.start, gold.span.end);
      if (e.contains("mention")) {
        if (!e["mention"].is_string() ||
            e["mention"].get<std::string>() != slice) {
          throw InvalidArgument("question '" + q.id + "': mention '" +
                                e["mention"].dump() +
                                "' does not match text slice '" + slice + "'");
        }
      }
      gold.mention = slice;
      if (e.contains("kb_id")) {
        if (!e["kb_id"].is_string()) {
          throw InvalidArgument("question '" + q.id + "': 'kb_id' not a string");
        }
        gold.kb_id = e["kb_id"].get<std::string>();
      }
      q.entities.push_back(std::move(gold));
    }
  }
  return q;
}

nlohmann::ordered_json Question::ToJson() const {
  nlohmann::ordered_json out;
  out["id"] = id;
  out["text"] = text;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto &e : entities) {
    nlohmann::ordered_json item;
    item["start"] = e.span.start;
    item["end"] = e.span.end;
    item["mention"] = e.mention;
    item["kb_id"] = e.kb_id;
    list.push_back(std::move(item));
  }
  out["entities"] = std::move(list);
  return out;
}

std::vector<nlohmann::json> ReadJsonLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<nlohmann::json> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return out;
}

std::vector<Question> LoadQuestions(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<Question> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Question::FromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(path, line_no, e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return out;
}

void ForEachJsonLine(
    const std::string &path,
    const std::function<void(const nlohmann::json &)> &visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      visit(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(path, line_no, e.what());
    } catch (const InvalidArgument &e) {
      throw ParseError(path, line_no, e.what());
    }
  }
}

void WriteJsonLines(const std::string &path,
                    const std::vector<nlohmann::ordered_json> &records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const auto &r : records) out << r.dump() << '\n';
  if (!out) throw Error("write failed for " + path);
}

void WriteQuestions(const std::string &path,
                    const std::vector<Question> &questions) {
  std::vector<nlohmann::ordered_json> records;
  records.reserve(questions.size());
  for (const auto &q : questions) records.push_back(q.ToJson());
  WriteJsonLines(path, records);
}

}  // namespace qedl
