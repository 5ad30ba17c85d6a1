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

#include "qedl/fixtures.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "qedl/errors.h"
#include "qedl/eval.h"
#include "qedl/qed.h"
#include "qedl/random.h"
#include "qedl/text.h"

namespace qedl {

namespace {

constexpr int kTopics = 4;

// Character pools are pairwise disjoint so that forward maximum matching
// never glues pieces of different words together.
constexpr char32_t kTopicChars[] =
    U"春夏秋冬风雨雪云山川河海花草树木金银铜铁红黄蓝绿白黑星月光影石玉竹松梅兰菊桃李";
constexpr char32_t kNameChars[] =
    U"甲乙丙丁戊己庚辛壬癸子丑寅卯辰巳午未申酉戌亥赤橙青紫琴棋书画龙虎凤龟";

struct Word {
  const char *text;
  const char *pos;
};

constexpr Word kFunctionWords[] = {
    {"请问", "v"}, {"我", "r"},     {"想", "v"},   {"知道", "v"},
    {"你", "r"},   {"的", "u"},     {"关于", "p"}, {"是", "v"},
    {"什么", "r"}, {"怎么样", "r"}, {"好", "a"},   {"吗", "u"},
    {"有", "v"},   {"哪些", "r"},   {"谁", "r"},   {"在", "p"},
    {"哪里", "r"}, {"和", "c"},     {"与", "c"},   {"还是", "c"},
    {"呢", "u"},   {"了", "u"},     {"吧", "u"},
};

// In the KG and the lexicon, but never annotated as mentions.
constexpr const char *kGenericNouns[] = {"东西", "地方", "情况", "办法",
                                         "意义", "方面", "时代", "原因"};

constexpr const char *kStopwords[] = {"的", "吗", "是", "了", "呢", "吧",
                                      "和", "与", "在", "我", "你"};

constexpr const char *kPrefixes[] = {"", "请问", "我想知道", "你知道"};
constexpr const char *kConnectors[] = {"和", "与", "还是"};
constexpr const char *kSuffixes[] = {"是什么?", "怎么样?", "好吗?",
                                     "有哪些?", "是谁?",   "在哪里?"};

std::string RandomWord(Rng &rng, std::u32string_view pool, int min_len,
                       int max_len) {
  const int len = static_cast<int>(rng.UniformRange(min_len, max_len));
  std::u32string w;
  for (int i = 0; i < len; ++i) w.push_back(pool[rng.UniformInt(pool.size())]);
  return EncodeUtf8(w);
}

// Entity names mix name-pool and ordinary characters, so that character
// identity alone does not reveal a mention.
std::string RandomName(Rng &rng, int min_len, int max_len) {
  const std::u32string_view names(kNameChars);
  const std::u32string_view words(kTopicChars);
  const int len = static_cast<int>(rng.UniformRange(min_len, max_len));
  std::u32string w;
  for (int i = 0; i < len; ++i) {
    const std::u32string_view pool = rng.Bernoulli(0.7) ? words : names;
    w.push_back(pool[rng.UniformInt(pool.size())]);
  }
  return EncodeUtf8(w);
}

std::string FreshName(Rng &rng, std::set<std::string> &used) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::string w = RandomName(rng, 2, 3);
    if (used.insert(w).second) return w;
  }
  throw InvalidArgument("fixture character pool exhausted");
}

// Word not in `used`; inserts it.
std::string FreshWord(Rng &rng, std::u32string_view pool, int min_len,
                      int max_len, std::set<std::string> &used) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::string w = RandomWord(rng, pool, min_len, max_len);
    if (used.insert(w).second) return w;
  }
  throw InvalidArgument("fixture character pool exhausted");
}

struct NamedEntity {
  int index;  // into FixtureData::entities
  int topic;
  std::string surface_key;
};

}  // namespace

void FixtureConfig::Validate() const {
  if (n_entities <= 0 || n_questions <= 0 || vocab_size <= 0 ||
      embedding_dim <= 0) {
    throw InvalidArgument("fixture counts must be positive");
  }
  if (!(ambiguity_rate >= 0.0 && ambiguity_rate <= 1.0)) {
    throw InvalidArgument("ambiguity_rate must be in [0, 1]");
  }
  if (vocab_size < 2 * kTopics) {
    throw InvalidArgument("vocab_size must be at least " +
                          std::to_string(2 * kTopics));
  }
  if (embedding_dim < kTopics + 2) {
    throw InvalidArgument("embedding_dim must be at least " +
                          std::to_string(kTopics + 2));
  }
  if (ambiguity_rate > 0.0 && n_entities < 2) {
    throw InvalidArgument("ambiguous surfaces need at least 2 entities");
  }
  if (n_entities > 2000 || vocab_size > 600) {
    throw InvalidArgument("fixture too large for the character pools");
  }
  if (holdout_fraction < 0.0 || holdout_fraction >= 1.0) {
    throw InvalidArgument("holdout_fraction must be in [0, 1)");
  }
}

KgStore FixtureData::BuildStore() const {
  KgStore store;
  for (const auto &e : entities) store.AddEntity(e);
  for (const auto &l : lexicon) store.AddLexiconEntry(l.term, l.pos);
  for (const auto &s : stopwords) store.AddStopword(s);
  return store;
}

FixtureData GenerateFixture(const FixtureConfig &config) {
  config.Validate();
  Rng rng(config.seed);
  FixtureData data;
  std::set<std::string> used;
  for (const Word &w : kFunctionWords) used.insert(w.text);
  for (const char *g : kGenericNouns) used.insert(g);

  // Topic vocabularies; the first word of each topic is its label.
  std::vector<std::vector<std::string>> topic_words(kTopics);
  for (int i = 0; i < config.vocab_size; ++i) {
    topic_words[i % kTopics].push_back(
        FreshWord(rng, kTopicChars, 2, 2, used));
  }

  // Surface forms, the first n_ambiguous of them shared by two entities.
  const int n_surfaces = static_cast<int>(
      std::ceil(config.n_entities / (1.0 + config.ambiguity_rate)));
  const int n_ambiguous = config.n_entities - n_surfaces;
  std::vector<NamedEntity> named;
  std::map<std::string, std::vector<int>> by_surface;  // surface -> named idx
  std::set<std::string> ambiguous_surfaces;
  int next_id = 1;
  for (int s = 0; s < n_surfaces; ++s) {
    const std::string name = FreshName(rng, used);
    const int copies = s < n_ambiguous ? 2 : 1;
    if (copies > 1) ambiguous_surfaces.insert(name);
    const int first_topic = static_cast<int>(rng.UniformInt(kTopics));
    for (int c = 0; c < copies; ++c) {
      const int topic = (first_topic + c) % kTopics;
      KgEntity e;
      char id[16];
      std::snprintf(id, sizeof(id), "E%04d", next_id++);
      e.id = id;
      e.name = name;
      if (copies == 1 && rng.Bernoulli(0.3)) {
        e.aliases.push_back(FreshName(rng, used));
      }
      std::string description;
      for (int k = 0; k < 3; ++k) {
        if (k) description += "、";
        description += topic_words[topic][1 + rng.UniformInt(
                                               topic_words[topic].size() - 1)];
      }
      e.attributes = {{"类别", topic_words[topic][0]},
                      {"描述", description}};
      e.popularity = std::max<int64_t>(
          1, static_cast<int64_t>(std::floor(std::pow(10.0, 6.0 * rng.Uniform()))));
      named.push_back({static_cast<int>(data.entities.size()), topic, name});
      by_surface[name].push_back(static_cast<int>(named.size()) - 1);
      data.entities.push_back(std::move(e));
    }
  }
  for (size_t g = 0; g < std::size(kGenericNouns); ++g) {
    KgEntity e;
    char id[16];
    std::snprintf(id, sizeof(id), "G%02zu", g + 1);
    e.id = id;
    e.name = kGenericNouns[g];
    e.attributes = {{"类别", "概念"}};
    e.popularity = std::max<int64_t>(
        1, static_cast<int64_t>(std::floor(std::pow(10.0, 6.0 * rng.Uniform()))));
    data.entities.push_back(std::move(e));
  }

  // Lexicon.
  for (const Word &w : kFunctionWords) data.lexicon.push_back({w.text, w.pos});
  for (const char *g : kGenericNouns) data.lexicon.push_back({g, "n"});
  for (const auto &words : topic_words) {
    for (const auto &w : words) data.lexicon.push_back({w, "n"});
  }
  std::set<std::string> entity_terms;
  for (const auto &n : named) {
    const KgEntity &e = data.entities[n.index];
    entity_terms.insert(e.name);
    for (const auto &a : e.aliases) entity_terms.insert(a);
  }
  for (const auto &t : entity_terms) data.lexicon.push_back({t, "n"});
  for (const char *s : kStopwords) data.stopwords.push_back(s);

  // Embeddings: axis t for topic t, axis kTopics for generic and shared
  // words, plus noise of norm 0.25 on the remaining axes. This keeps
  // same-topic cosines above 0.8 and cross-topic cosines below 0.2.
  const int dim = config.embedding_dim;
  std::map<std::string, int> axis_of;
  for (int t = 0; t < kTopics; ++t) {
    for (const auto &w : topic_words[t]) axis_of[w] = t;
  }
  for (const char *g : kGenericNouns) axis_of[g] = kTopics;
  for (const auto &n : named) {
    const KgEntity &e = data.entities[n.index];
    const int axis = ambiguous_surfaces.contains(e.name) ? kTopics : n.topic;
    axis_of[e.name] = axis;
    for (const auto &a : e.aliases) axis_of[a] = axis;
  }
  data.embeddings = EmbeddingTable(dim);
  for (const auto &[term, axis] : axis_of) {
    std::vector<double> v(dim, 0.0);
    v[axis] = 1.0;
    double norm = 0.0;
    std::vector<double> noise(dim - kTopics - 1);
    for (double &x : noise) {
      x = rng.Normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (size_t i = 0; i < noise.size(); ++i) {
      v[kTopics + 1 + i] = norm > 0.0 ? 0.25 * noise[i] / norm : 0.0;
    }
    data.embeddings.Add(term, std::move(v));
  }

  // Corpus: topic-coherent documents.
  std::vector<std::vector<std::string>> topic_entities(kTopics);
  for (const auto &n : named) {
    const KgEntity &e = data.entities[n.index];
    topic_entities[n.topic].push_back(e.name);
    for (const auto &a : e.aliases) topic_entities[n.topic].push_back(a);
  }
  const int n_docs = std::max(100, 2 * config.n_questions);
  for (int d = 0; d < n_docs; ++d) {
    const int topic = static_cast<int>(rng.UniformInt(kTopics));
    const int len = static_cast<int>(rng.UniformRange(6, 12));
    std::vector<std::string> doc;
    for (int i = 0; i < len; ++i) {
      const double r = rng.Uniform();
      if (r < 0.5 || topic_entities[topic].empty()) {
        doc.push_back(rng.Pick(topic_words[topic]));
      } else if (r < 0.75) {
        doc.push_back(rng.Pick(topic_entities[topic]));
      } else if (r < 0.85) {
        doc.push_back(kGenericNouns[rng.UniformInt(std::size(kGenericNouns))]);
      } else {
        doc.push_back(
            kFunctionWords[rng.UniformInt(std::size(kFunctionWords))].text);
      }
    }
    data.corpus.push_back(std::move(doc));
  }

  // Questions. A draw whose gold spans KG retrieval cannot align (a
  // lexicon word straddling a mention boundary) is redrawn.
  const KgStore store = data.BuildStore();
  auto draw_question = [&](int q) {
    const double r = rng.Uniform();
    const int k = std::min<int>(r < 0.4 ? 1 : (r < 0.8 ? 2 : 3),
                                static_cast<int>(by_surface.size()));
    std::vector<int> chosen;  // indices into `named`, distinct surfaces
    std::set<std::string> chosen_surfaces;
    while (static_cast<int>(chosen.size()) < k) {
      const int pick = static_cast<int>(rng.UniformInt(named.size()));
      if (!chosen_surfaces.insert(named[pick].surface_key).second) continue;
      chosen.push_back(pick);
    }

    std::u32string text = DecodeUtf8(kPrefixes[rng.UniformInt(std::size(kPrefixes))]);
    Question question;
    char qid[16];
    std::snprintf(qid, sizeof(qid), "Q%04d", q + 1);
    question.id = qid;
    for (int i = 0; i < k; ++i) {
      const NamedEntity &n = named[chosen[i]];
      const KgEntity &e = data.entities[n.index];
      if (i > 0) {
        text += DecodeUtf8(kConnectors[rng.UniformInt(std::size(kConnectors))]);
      }
      const bool ambiguous = ambiguous_surfaces.contains(e.name);
      if (ambiguous || rng.Bernoulli(0.6)) {
        text += DecodeUtf8(
            topic_words[n.topic][1 + rng.UniformInt(
                                         topic_words[n.topic].size() - 1)]);
      }
      if (rng.Bernoulli(0.35)) {
        text += DecodeUtf8(
            kGenericNouns[rng.UniformInt(std::size(kGenericNouns))]);
      }
      if (rng.Bernoulli(0.5)) text += U"的";
      std::string surface = e.name;
      if (!e.aliases.empty() && rng.Bernoulli(0.3)) surface = e.aliases[0];
      const int start = static_cast<int>(text.size());
      text += DecodeUtf8(surface);
      question.entities.push_back(
          {{start, static_cast<int>(text.size())}, surface, e.id});
    }
    if (rng.Bernoulli(0.3)) {
      text += U"的";
      text += DecodeUtf8(kGenericNouns[rng.UniformInt(std::size(kGenericNouns))]);
    }
    text += DecodeUtf8(kSuffixes[rng.UniformInt(std::size(kSuffixes))]);
    question.text = EncodeUtf8(text);
    return question;
  };
  auto recoverable = [&](const Question &question) {
    std::set<Span> found;
    for (const Mention &m : DiscoverKg(DecodeUtf8(question.text), store)) {
      found.insert(m.span());
    }
    for (const auto &g : question.entities) {
      if (!found.contains(g.span)) return false;
    }
    return true;
  };
  for (int q = 0; q < config.n_questions; ++q) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) {
        throw InvalidArgument("cannot draw a well-segmented question");
      }
      Question question = draw_question(q);
      if (recoverable(question)) {
        data.questions.push_back(std::move(question));
        break;
      }
    }
  }
  return data;
}

void WriteFixture(const FixtureData &data, const FixtureConfig &config,
                  const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path root(dir);

  std::vector<nlohmann::ordered_json> kg;
  for (const auto &e : data.entities) kg.push_back(e.ToJson());
  WriteJsonLines((root / "kg.jsonl").string(), kg);

  auto write_lines = [&](const char *name, const std::vector<std::string> &lines) {
    std::ofstream out(root / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (root / name).string());
    for (const auto &l : lines) out << l << '\n';
  };
  std::vector<std::string> lexicon;
  for (const auto &l : data.lexicon) lexicon.push_back(l.term + "\t" + l.pos);
  write_lines("lexicon.txt", lexicon);
  write_lines("stopwords.txt", data.stopwords);
  std::vector<std::string> corpus;
  for (const auto &doc : data.corpus) {
    std::string line;
    for (const auto &t : doc) {
      if (!line.empty()) line += ' ';
      line += t;
    }
    corpus.push_back(std::move(line));
  }
  write_lines("corpus.txt", corpus);
  data.embeddings.Save((root / "embeddings.txt").string());

  WriteQuestions((root / "questions.jsonl").string(), data.questions);
  QuestionSplit split =
      SplitQuestions(data.questions, config.holdout_fraction, config.seed);
  WriteQuestions((root / "train.jsonl").string(), split.train);
  WriteQuestions((root / "test.jsonl").string(), split.heldout);
}

}  // namespace qedl
