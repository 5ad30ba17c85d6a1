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

#include "pipeline_config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "qedl/errors.h"

namespace qedl::cli {

namespace fs = std::filesystem;

namespace {

// Fallback file names under data_dir.
const std::map<std::string, std::string> kDefaultFiles = {
    {"kg", "kg.jsonl"},
    {"lexicon", "lexicon.txt"},
    {"stopwords", "stopwords.txt"},
    {"embeddings", "embeddings.txt"},
    {"corpus", "corpus.txt"},
    {"questions", "train.jsonl"},
    {"eval_questions", "test.jsonl"},
    {"sweep_questions", "questions.jsonl"},
};

void CheckKeys(const nlohmann::json &j, const std::string &section,
               const std::set<std::string> &known) {
  if (!j.is_object()) {
    throw ConfigError((section.empty() ? "config" : section) +
                      ": expected an object");
  }
  for (const auto &[key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown config field '" +
                        (section.empty() ? key : section + "." + key) + "'");
    }
  }
}

template <typename T>
void Read(const nlohmann::json &j, const std::string &section,
          const char *key, T &out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ConfigError("config field '" + section + "." + key +
                      "' has the wrong type");
  }
}

std::vector<QedMethod> ParseMethods(const nlohmann::json &j,
                                    const std::string &field) {
  std::vector<QedMethod> methods;
  if (!j.is_array()) throw ConfigError(field + ": expected an array");
  for (const auto &m : j) {
    try {
      methods.push_back(ParseQedMethod(m.get<std::string>()));
    } catch (const std::exception &e) {
      throw ConfigError(field + ": " + e.what());
    }
  }
  return methods;
}

}  // namespace

std::string Fnv1aHex(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

PipelineConfig PipelineConfig::FromJson(const nlohmann::json &j,
                                        const std::string &base_dir) {
  PipelineConfig c;
  c.base_dir = base_dir.empty() ? "." : base_dir;
  CheckKeys(j, "", {"paths", "qed", "similarity", "ranker", "sweep",
                    "fixture"});

  if (j.contains("paths")) {
    const auto &p = j["paths"];
    CheckKeys(p, "paths",
              {"data_dir", "run_dir", "cache_dir", "kg", "lexicon",
               "stopwords", "embeddings", "corpus", "questions",
               "eval_questions", "sweep_questions"});
    Read(p, "paths", "data_dir", c.paths.data_dir);
    Read(p, "paths", "run_dir", c.paths.run_dir);
    Read(p, "paths", "cache_dir", c.paths.cache_dir);
    Read(p, "paths", "kg", c.paths.kg);
    Read(p, "paths", "lexicon", c.paths.lexicon);
    Read(p, "paths", "stopwords", c.paths.stopwords);
    Read(p, "paths", "embeddings", c.paths.embeddings);
    Read(p, "paths", "corpus", c.paths.corpus);
    Read(p, "paths", "questions", c.paths.questions);
    Read(p, "paths", "eval_questions", c.paths.eval_questions);
    Read(p, "paths", "sweep_questions", c.paths.sweep_questions);
  }

  if (j.contains("qed")) {
    const auto &q = j["qed"];
    CheckKeys(q, "qed", {"method", "l2", "epochs", "seed", "step_size",
                         "max_n", "df_buckets"});
    if (q.contains("method")) {
      try {
        c.qed.method = ParseQedMethod(q["method"].get<std::string>());
      } catch (const std::exception &e) {
        throw ConfigError(std::string("qed.method: ") + e.what());
      }
    }
    Read(q, "qed", "l2", c.qed.crf.l2);
    Read(q, "qed", "epochs", c.qed.crf.epochs);
    Read(q, "qed", "seed", c.qed.crf.seed);
    Read(q, "qed", "step_size", c.qed.crf.step_size);
    Read(q, "qed", "max_n", c.qed.max_n);
    Read(q, "qed", "df_buckets", c.qed.df_buckets);
  }

  if (j.contains("similarity")) {
    const auto &s = j["similarity"];
    CheckKeys(s, "similarity",
              {"k1", "b", "lsi_rank", "lda_topics", "lda_alpha", "lda_beta",
               "lda_train_sweeps", "lda_infer_sweeps", "lda_seed", "avge",
               "segment_corpus"});
    Read(s, "similarity", "k1", c.similarity.bm25.k1);
    Read(s, "similarity", "b", c.similarity.bm25.b);
    Read(s, "similarity", "lsi_rank", c.similarity.models.lsi_rank);
    Read(s, "similarity", "lda_topics", c.similarity.models.lda.topics);
    Read(s, "similarity", "lda_alpha", c.similarity.models.lda.alpha);
    Read(s, "similarity", "lda_beta", c.similarity.models.lda.beta);
    Read(s, "similarity", "lda_train_sweeps",
         c.similarity.models.lda.train_sweeps);
    Read(s, "similarity", "lda_infer_sweeps",
         c.similarity.models.lda.infer_sweeps);
    Read(s, "similarity", "lda_seed", c.similarity.models.lda.seed);
    Read(s, "similarity", "segment_corpus", c.similarity.segment_corpus);
    if (s.contains("avge")) {
      std::string mode;
      Read(s, "similarity", "avge", mode);
      if (mode == "per_mention") {
        c.similarity.avge = AvgeMode::kPerMention;
      } else if (mode == "global") {
        c.similarity.avge = AvgeMode::kGlobal;
      } else {
        throw ConfigError("similarity.avge must be 'per_mention' or 'global'");
      }
    }
  }

  if (j.contains("ranker")) {
    const auto &r = j["ranker"];
    CheckKeys(r, "ranker", {"l2", "epochs", "eta0", "seed", "features"});
    Read(r, "ranker", "l2", c.ranker.options.l2);
    Read(r, "ranker", "epochs", c.ranker.options.epochs);
    Read(r, "ranker", "eta0", c.ranker.options.eta0);
    Read(r, "ranker", "seed", c.ranker.options.seed);
    if (r.contains("features")) {
      std::string spec;
      Read(r, "ranker", "features", spec);
      try {
        c.ranker.features = ParseFeatureGroups(spec);
      } catch (const std::exception &e) {
        throw ConfigError(std::string("ranker.features: ") + e.what());
      }
    }
  }

  if (j.contains("sweep")) {
    const auto &s = j["sweep"];
    CheckKeys(s, "sweep", {"sizes", "methods", "holdout_fraction", "seed"});
    Read(s, "sweep", "sizes", c.sweep.sizes);
    if (s.contains("methods")) {
      c.sweep.methods = ParseMethods(s["methods"], "sweep.methods");
    }
    Read(s, "sweep", "holdout_fraction", c.sweep.holdout_fraction);
    Read(s, "sweep", "seed", c.sweep.seed);
  }

  if (j.contains("fixture")) {
    const auto &f = j["fixture"];
    CheckKeys(f, "fixture",
              {"seed", "n_entities", "n_questions", "vocab_size",
               "embedding_dim", "ambiguity_rate", "holdout_fraction"});
    Read(f, "fixture", "seed", c.fixture.seed);
    Read(f, "fixture", "n_entities", c.fixture.n_entities);
    Read(f, "fixture", "n_questions", c.fixture.n_questions);
    Read(f, "fixture", "vocab_size", c.fixture.vocab_size);
    Read(f, "fixture", "embedding_dim", c.fixture.embedding_dim);
    Read(f, "fixture", "ambiguity_rate", c.fixture.ambiguity_rate);
    Read(f, "fixture", "holdout_fraction", c.fixture.holdout_fraction);
  }

  c.Validate();
  return c;
}

PipelineConfig PipelineConfig::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return FromJson(j, fs::path(path).parent_path().string());
}

void PipelineConfig::Validate() const {
  auto fail = [](const std::string &field, const std::string &rule) {
    throw ConfigError("config field '" + field + "' " + rule);
  };
  if (!(qed.crf.l2 >= 0.0)) fail("qed.l2", "must be >= 0");
  if (qed.crf.epochs < 0) fail("qed.epochs", "must be >= 0");
  if (!(qed.crf.step_size > 0.0)) fail("qed.step_size", "must be > 0");
  if (qed.max_n < 1) fail("qed.max_n", "must be >= 1");
  if (qed.df_buckets < 1) fail("qed.df_buckets", "must be >= 1");
  if (!(similarity.bm25.k1 >= 0.0)) fail("similarity.k1", "must be >= 0");
  if (!(similarity.bm25.b >= 0.0 && similarity.bm25.b <= 1.0)) {
    fail("similarity.b", "must be in [0, 1]");
  }
  if (similarity.models.lsi_rank < 1) fail("similarity.lsi_rank", "must be >= 1");
  const LdaOptions &lda = similarity.models.lda;
  if (lda.topics < 1) fail("similarity.lda_topics", "must be >= 1");
  if (!(lda.beta > 0.0)) fail("similarity.lda_beta", "must be > 0");
  if (lda.alpha == 0.0 || std::isnan(lda.alpha)) {
    fail("similarity.lda_alpha", "must be > 0 (or negative for 50/K)");
  }
  if (lda.train_sweeps < 0) fail("similarity.lda_train_sweeps", "must be >= 0");
  if (lda.infer_sweeps < 1) fail("similarity.lda_infer_sweeps", "must be >= 1");
  if (!(ranker.options.l2 >= 0.0)) fail("ranker.l2", "must be >= 0");
  if (ranker.options.epochs < 0) fail("ranker.epochs", "must be >= 0");
  if (!(ranker.options.eta0 > 0.0)) fail("ranker.eta0", "must be > 0");
  if (!(sweep.holdout_fraction > 0.0 && sweep.holdout_fraction < 1.0)) {
    fail("sweep.holdout_fraction", "must be in (0, 1)");
  }
  for (size_t i = 0; i < sweep.sizes.size(); ++i) {
    if (sweep.sizes[i] <= 0 || (i > 0 && sweep.sizes[i] <= sweep.sizes[i - 1])) {
      fail("sweep.sizes", "must be positive and strictly increasing");
    }
  }
  try {
    fixture.Validate();
  } catch (const std::exception &e) {
    throw ConfigError(std::string("fixture: ") + e.what());
  }
}

nlohmann::ordered_json PipelineConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["paths"] = {{"data_dir", paths.data_dir},
                {"run_dir", paths.run_dir},
                {"cache_dir", paths.cache_dir},
                {"kg", paths.kg},
                {"lexicon", paths.lexicon},
                {"stopwords", paths.stopwords},
                {"embeddings", paths.embeddings},
                {"corpus", paths.corpus},
                {"questions", paths.questions},
                {"eval_questions", paths.eval_questions},
                {"sweep_questions", paths.sweep_questions}};
  j["qed"] = {{"method", QedMethodName(qed.method)},
              {"l2", qed.crf.l2},
              {"epochs", qed.crf.epochs},
              {"seed", qed.crf.seed},
              {"step_size", qed.crf.step_size},
              {"max_n", qed.max_n},
              {"df_buckets", qed.df_buckets}};
  const LdaOptions &lda = similarity.models.lda;
  j["similarity"] = {
      {"k1", similarity.bm25.k1},
      {"b", similarity.bm25.b},
      {"lsi_rank", similarity.models.lsi_rank},
      {"lda_topics", lda.topics},
      {"lda_alpha", lda.alpha},
      {"lda_beta", lda.beta},
      {"lda_train_sweeps", lda.train_sweeps},
      {"lda_infer_sweeps", lda.infer_sweeps},
      {"lda_seed", lda.seed},
      {"avge", similarity.avge == AvgeMode::kGlobal ? "global" : "per_mention"},
      {"segment_corpus", similarity.segment_corpus}};
  j["ranker"] = {{"l2", ranker.options.l2},
                 {"epochs", ranker.options.epochs},
                 {"eta0", ranker.options.eta0},
                 {"seed", ranker.options.seed},
                 {"features", FeatureGroupsName(ranker.features)}};
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (QedMethod m : sweep.methods) methods.push_back(QedMethodName(m));
  j["sweep"] = {{"sizes", sweep.sizes},
                {"methods", methods},
                {"holdout_fraction", sweep.holdout_fraction},
                {"seed", sweep.seed}};
  j["fixture"] = {{"seed", fixture.seed},
                  {"n_entities", fixture.n_entities},
                  {"n_questions", fixture.n_questions},
                  {"vocab_size", fixture.vocab_size},
                  {"embedding_dim", fixture.embedding_dim},
                  {"ambiguity_rate", fixture.ambiguity_rate},
                  {"holdout_fraction", fixture.holdout_fraction}};
  return j;
}

std::string PipelineConfig::Resolve(const std::string &field) const {
  const std::map<std::string, const std::string *> fields = {
      {"kg", &paths.kg},
      {"lexicon", &paths.lexicon},
      {"stopwords", &paths.stopwords},
      {"embeddings", &paths.embeddings},
      {"corpus", &paths.corpus},
      {"questions", &paths.questions},
      {"eval_questions", &paths.eval_questions},
      {"sweep_questions", &paths.sweep_questions},
  };
  auto it = fields.find(field);
  if (it == fields.end()) throw ConfigError("unknown path field " + field);
  fs::path p;
  if (!it->second->empty()) {
    p = *it->second;
  } else if (!paths.data_dir.empty()) {
    p = fs::path(paths.data_dir) / kDefaultFiles.at(field);
  } else {
    return "";
  }
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

std::string PipelineConfig::Require(const std::string &field) const {
  std::string p = Resolve(field);
  if (p.empty()) {
    throw ConfigError("config field 'paths." + field +
                      "' is required (or set paths.data_dir)");
  }
  if (!fs::exists(p)) {
    throw ConfigError("config field 'paths." + field + "': file " + p +
                      " does not exist");
  }
  return p;
}

std::string PipelineConfig::RunDir() const {
  fs::path p = paths.run_dir.empty() ? fs::path("run") : fs::path(paths.run_dir);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

std::string PipelineConfig::CacheDir() const {
  if (paths.cache_dir.empty()) return (fs::path(RunDir()) / "cache").string();
  fs::path p(paths.cache_dir);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

}  // namespace qedl::cli
