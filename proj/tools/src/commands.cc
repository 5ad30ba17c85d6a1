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

#include "commands.h"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "qedl/corpus.h"
#include "qedl/dataset.h"
#include "qedl/errors.h"
#include "qedl/eval.h"
#include "qedl/fixtures.h"
#include "qedl/kg_store.h"
#include "qedl/qed.h"
#include "qedl/ranker.h"
#include "qedl/segmentation.h"
#include "qedl/similarity.h"
#include "qedl/text.h"

#ifndef QEDL_VERSION_STRING
#define QEDL_VERSION_STRING "0.0.0"
#endif

namespace qedl::cli {

namespace fs = std::filesystem;

namespace {

std::string OrDefault(const std::string &value, const std::string &fallback) {
  return value.empty() ? fallback : value;
}

std::string InRun(const PipelineConfig &config, const char *name) {
  return (fs::path(config.RunDir()) / name).string();
}

std::string SimilarityPath(const PipelineConfig &config,
                           const std::string &flag) {
  return OrDefault(flag, (fs::path(config.CacheDir()) / "similarity.json")
                             .string());
}

void EnsureParent(const std::string &path) {
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void WriteText(const std::string &path, const std::string &content) {
  EnsureParent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

void WriteJson(const std::string &path, const nlohmann::ordered_json &j) {
  WriteText(path, j.dump(2) + "\n");
}

void WriteRecords(const std::string &path,
                  const std::vector<nlohmann::ordered_json> &records) {
  EnsureParent(path);
  WriteJsonLines(path, records);
}

void RequireFile(const std::string &path, const std::string &what) {
  if (!fs::exists(path)) throw Error(what + " " + path + " does not exist");
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be
// written to per-index slots so output order does not depend on timing.
template <typename Fn>
void ParallelFor(size_t n, int jobs, Fn fn) {
  if (jobs <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), n);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : threads) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

KgStore LoadStore(const PipelineConfig &config, bool need_lexicon = true) {
  KgStore store;
  store.LoadEntities(config.Require("kg"));
  if (need_lexicon) {
    store.LoadLexicon(config.Require("lexicon"));
  } else if (std::string p = config.Resolve("lexicon");
             !p.empty() && fs::exists(p)) {
    store.LoadLexicon(p);
  }
  if (std::string p = config.Resolve("stopwords");
      !p.empty() && fs::exists(p)) {
    store.LoadStopwords(p);
  }
  return store;
}

// Document frequencies for the DF feature; empty without a corpus.
DocumentFrequencies LoadDf(const PipelineConfig &config) {
  std::string p = config.Resolve("corpus");
  if (p.empty() || !fs::exists(p)) return {};
  return DocumentFrequencies(LoadCorpus(p));
}

std::vector<Document> LoadSimilarityCorpus(const PipelineConfig &config,
                                           const KgStore &store) {
  const std::string path = config.Require("corpus");
  if (!config.similarity.segment_corpus) return LoadCorpus(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<Document> docs;
  std::string line;
  while (std::getline(in, line)) {
    Document doc;
    for (const Token &tok : SegmentFmm(DecodeUtf8(line), store)) {
      std::string term = Normalize(tok.surface);
      if (!term.empty() && term != "_") doc.push_back(std::move(term));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

CorpusModels LoadOrFitModels(const PipelineConfig &config,
                             const KgStore &store, const std::string &path,
                             Console &console) {
  if (fs::exists(path)) return CorpusModels::Load(path);
  std::string corpus = config.Resolve("corpus");
  if (corpus.empty() || !fs::exists(corpus)) {
    throw Error("similarity models not fitted: " + path +
                " is missing and paths.corpus is not set; run "
                "'qedl fit-similarity' first or configure a corpus");
  }
  console.err << "fitting similarity models from " << corpus << "\n";
  CorpusModels models = CorpusModels::Fit(LoadSimilarityCorpus(config, store),
                                          store.stopwords(),
                                          config.similarity.models);
  EnsureParent(path);
  models.Save(path);
  return models;
}

QedResources MakeResources(const KgStore &store, const DocumentFrequencies &df,
                           int max_n, int df_buckets) {
  QedResources res;
  res.store = &store;
  res.df = &df;
  res.candidates.max_n = max_n;
  res.df_buckets = df_buckets;
  return res;
}

std::string Fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string Pad(const std::string &s, size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string ReportsText(const QedReport &qed, const ElReport &el,
                        const QedReport &overall) {
  std::ostringstream out;
  out << Pad("report", 10) << Pad("precision", 11) << Pad("recall", 8)
      << Pad("f1", 8) << Pad("predicted", 11) << Pad("gold", 8) << "correct\n";
  for (const auto &[name, r] :
       {std::pair<const char *, const QedReport *>{"qed", &qed},
        {"overall", &overall}}) {
    out << Pad(name, 10) << Pad(Fixed4(r->precision), 11)
        << Pad(Fixed4(r->recall), 8) << Pad(Fixed4(r->f1), 8)
        << Pad(std::to_string(r->predicted), 11)
        << Pad(std::to_string(r->gold), 8) << r->correct << "\n";
  }
  out << "\n"
      << Pad("report", 10) << Pad("accuracy", 10) << Pad("scored", 8)
      << "correct\n"
      << Pad("el", 10) << Pad(Fixed4(el.accuracy), 10)
      << Pad(std::to_string(el.scored), 8) << el.correct << "\n";
  return out.str();
}

std::string AblationText(const std::vector<AblationRow> &rows) {
  std::ostringstream out;
  out << Pad("protocol", 15) << Pad("features", 34) << "accuracy\n";
  for (const auto &r : rows) {
    out << Pad(r.protocol, 15) << Pad(r.features, 34) << Fixed4(r.accuracy)
        << "\n";
  }
  return out.str();
}

const nlohmann::json &Field(const nlohmann::json &record, const char *name) {
  if (!record.is_object() || !record.contains(name)) {
    throw InvalidArgument(std::string("missing field '") + name + "'");
  }
  return record[name];
}

std::string QuestionId(const nlohmann::json &record, const char *name) {
  const auto &v = Field(record, name);
  if (!v.is_string()) {
    throw InvalidArgument(std::string("field '") + name + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

void UpdateManifest(const PipelineConfig &config, const std::string &command,
                    const std::vector<std::string> &outputs) {
  const std::string path = InRun(config, "manifest.json");
  nlohmann::json manifest = nlohmann::json::object();
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    manifest = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (manifest.is_discarded() || !manifest.is_object()) {
      manifest = nlohmann::json::object();
    }
  }
  manifest["tool"] = "qedl";
  manifest["version"] = QEDL_VERSION_STRING;
  const fs::path run = fs::path(config.RunDir());
  nlohmann::json files = nlohmann::json::array();
  for (const auto &o : outputs) {
    fs::path rel = fs::path(o).lexically_relative(run);
    const bool inside = !rel.empty() && *rel.begin() != "..";
    files.push_back(inside ? rel.generic_string() : fs::path(o).generic_string());
  }
  const std::string config_text = config.ToJson().dump();
  manifest["commands"][command] = {{"config_hash", Fnv1aHex(config_text)},
                                   {"outputs", files}};
  WriteText(path, manifest.dump(2) + "\n");
}

void RunGenFixture(const PipelineConfig &config, const GenFixtureArgs &args,
                   Console &console) {
  std::string dir = args.out_dir;
  if (dir.empty()) {
    if (config.paths.data_dir.empty()) {
      throw ConfigError("gen-fixture needs --out or paths.data_dir");
    }
    fs::path p(config.paths.data_dir);
    if (p.is_relative()) p = fs::path(config.base_dir) / p;
    dir = p.lexically_normal().string();
  }
  FixtureData data = GenerateFixture(config.fixture);
  WriteFixture(data, config.fixture, dir);
  console.err << "wrote fixture with " << data.entities.size() << " entities and "
              << data.questions.size() << " questions to " << dir << "\n";
  std::vector<std::string> outputs;
  for (const char *f : {"kg.jsonl", "lexicon.txt", "stopwords.txt",
                        "embeddings.txt", "corpus.txt", "questions.jsonl",
                        "train.jsonl", "test.jsonl"}) {
    outputs.push_back((fs::path(dir) / f).string());
  }
  UpdateManifest(config, "gen-fixture", outputs);
}

void RunTrainQed(const PipelineConfig &config, const TrainQedArgs &args,
                 Console &console) {
  if (config.qed.method == QedMethod::kKg) {
    throw ConfigError("config field 'qed.method' is 'kg', which has no model "
                      "to train; use crf, ensemble or iteration");
  }
  KgStore store = LoadStore(config);
  DocumentFrequencies df = LoadDf(config);
  std::vector<Question> questions = LoadQuestions(config.Require("questions"));
  if (config.qed.crf.epochs == 0) {
    console.err << "warning: qed.epochs is 0; writing a zero-weight model\n";
  }
  QedResources res =
      MakeResources(store, df, config.qed.max_n, config.qed.df_buckets);
  std::vector<double> history;
  CrfModel model =
      TrainQed(questions, config.qed.method, res, config.qed.crf, &history);

  const std::string out = OrDefault(args.out, InRun(config, "qed_model.json"));
  EnsureParent(out);
  model.Save(out);
  const std::string log_path = InRun(config, "qed_train_log.json");
  nlohmann::ordered_json log;
  log["method"] = QedMethodName(config.qed.method);
  log["questions"] = questions.size();
  log["features"] = model.num_features();
  log["epochs"] = config.qed.crf.epochs;
  log["objective"] = history;
  WriteJson(log_path, log);
  console.err << "trained " << QedMethodName(config.qed.method) << " CRF on "
              << questions.size() << " questions, " << model.num_features()
              << " features, objective " << model.objective << "\n";
  UpdateManifest(config, "train-qed", {out, log_path});
}

void RunDiscover(const PipelineConfig &config, const DiscoverArgs &args,
                 Console &console) {
  KgStore store = LoadStore(config);
  DocumentFrequencies df = LoadDf(config);
  CrfModel model;
  int max_n = config.qed.max_n;
  int df_buckets = config.qed.df_buckets;
  if (!args.kg_only) {
    const std::string model_path =
        OrDefault(args.model, InRun(config, "qed_model.json"));
    RequireFile(model_path, "QED model");
    model = CrfModel::Load(model_path);
    max_n = model.max_n;
    df_buckets = model.df_buckets;
  }
  QedResources res = MakeResources(store, df, max_n, df_buckets);
  const std::string questions_path =
      args.questions.empty() ? config.Require("eval_questions") : args.questions;
  std::vector<Question> questions = LoadQuestions(questions_path);

  std::vector<nlohmann::ordered_json> records(questions.size());
  ParallelFor(questions.size(), args.jobs, [&](size_t i) {
    const std::u32string text = DecodeUtf8(questions[i].text);
    std::vector<Mention> kg = DiscoverKg(text, store, res.candidates);
    std::vector<Mention> mentions;
    if (args.kg_only) {
      mentions = std::move(kg);
    } else {
      mentions = DiscoverCrf(text, model, res);
      if (args.iteration) mentions = OneStepIteration(mentions, kg, store);
    }
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto &m : mentions) list.push_back(m.ToJson());
    records[i] = {{"id", questions[i].id}, {"mentions", std::move(list)}};
  });

  const std::string out = OrDefault(args.out, InRun(config, "mentions.jsonl"));
  WriteRecords(out, records);
  console.err << "discovered mentions for " << questions.size()
              << " questions\n";
  UpdateManifest(config, "discover", {out});
}

void RunFitSimilarity(const PipelineConfig &config,
                      const FitSimilarityArgs &args, Console &console) {
  KgStore store = LoadStore(config, /*need_lexicon=*/false);
  std::vector<Document> docs = LoadSimilarityCorpus(config, store);
  CorpusModels models =
      CorpusModels::Fit(docs, store.stopwords(), config.similarity.models);
  const std::string out = SimilarityPath(config, args.out);
  EnsureParent(out);
  models.Save(out);
  console.err << "fitted similarity models on " << docs.size()
              << " documents, vocabulary " << models.tfidf.vocabulary_size()
              << ", LSI rank " << models.lsi.rank() << "\n";
  UpdateManifest(config, "fit-similarity", {out});
}

void RunTrainRanker(const PipelineConfig &config, const TrainRankerArgs &args,
                    Console &console) {
  KgStore store = LoadStore(config);
  EmbeddingTable embeddings = EmbeddingTable::Load(config.Require("embeddings"));
  CorpusModels models = LoadOrFitModels(
      config, store, SimilarityPath(config, args.similarity), console);
  SimilarityContext context(store, embeddings, models, config.similarity.bm25,
                            config.similarity.avge);
  std::vector<Question> questions = LoadQuestions(config.Require("questions"));
  std::vector<LinkingCase> cases = LinkingCasesFromGold(questions, context);
  const unsigned mask = config.ranker.features;
  std::vector<RankingExample> examples = RankingExamplesFrom(cases, mask);

  RankModel model;
  std::vector<double> history;
  if (examples.empty()) {
    console.err << "warning: no training mention has competing candidates; "
                   "writing a zero-weight model\n";
    model.l2 = config.ranker.options.l2;
    model.epochs = config.ranker.options.epochs;
    model.seed = config.ranker.options.seed;
  } else {
    model = TrainRanker(examples, config.ranker.options, &history);
  }
  model.feature_mask = mask;

  const std::string out = OrDefault(args.out, InRun(config, "ranker.json"));
  EnsureParent(out);
  model.Save(out);
  const double accuracy = LinkingAccuracy(model, cases);
  const std::string log_path = InRun(config, "ranker_train_log.json");
  nlohmann::ordered_json log;
  log["features"] = FeatureGroupsName(mask);
  log["mentions"] = cases.size();
  log["queries"] = examples.size();
  log["training_accuracy"] = accuracy;
  log["objective"] = history;
  WriteJson(log_path, log);
  console.err << "trained ranker on " << examples.size()
              << " ambiguous mentions, training accuracy " << Fixed4(accuracy)
              << "\n";
  UpdateManifest(config, "train-ranker", {out, log_path});
}

void RunLink(const PipelineConfig &config, const LinkArgs &args,
             Console &console) {
  KgStore store = LoadStore(config);
  EmbeddingTable embeddings = EmbeddingTable::Load(config.Require("embeddings"));
  CorpusModels models = LoadOrFitModels(
      config, store, SimilarityPath(config, args.similarity), console);
  SimilarityContext context(store, embeddings, models, config.similarity.bm25,
                            config.similarity.avge);
  const std::string model_path =
      OrDefault(args.model, InRun(config, "ranker.json"));
  RequireFile(model_path, "ranker model");
  RankModel model = RankModel::Load(model_path);
  const unsigned mask = args.features.value_or(model.feature_mask);

  const std::string questions_path =
      args.questions.empty() ? config.Require("eval_questions") : args.questions;
  std::map<std::string, std::string> texts;
  for (const auto &q : LoadQuestions(questions_path)) texts[q.id] = q.text;

  struct Item {
    std::string question_id;
    Mention mention;
  };
  std::vector<Item> items;
  const std::string mentions_path =
      OrDefault(args.mentions, InRun(config, "mentions.jsonl"));
  ForEachJsonLine(mentions_path, [&](const nlohmann::json &record) {
    std::string id = QuestionId(record, "id");
    auto it = texts.find(id);
    if (it == texts.end()) {
      throw InvalidArgument("question '" + id + "' not found in " +
                            questions_path);
    }
    const auto &list = Field(record, "mentions");
    if (!list.is_array()) throw InvalidArgument("'mentions' must be a list");
    for (const auto &m : list) items.push_back({id, Mention::FromJson(m)});
  });

  std::vector<nlohmann::ordered_json> records(items.size());
  ParallelFor(items.size(), args.jobs, [&](size_t i) {
    const Item &item = items[i];
    auto candidates = GenerateElCandidates(item.mention, store);
    auto features = BuildCandidateFeatures(texts.at(item.question_id),
                                           candidates, context, mask);
    std::vector<ScoredInput> inputs;
    for (size_t c = 0; c < candidates.size(); ++c) {
      inputs.push_back({candidates[c]->id, features[c]});
    }
    nlohmann::ordered_json ranked = nlohmann::ordered_json::array();
    for (const auto &r : RankCandidates(model, inputs)) {
      ranked.push_back({{"entity_id", r.entity_id},
                        {"score", r.score},
                        {"features", r.features}});
    }
    records[i] = {{"question_id", item.question_id},
                  {"mention", item.mention.ToJson()},
                  {"ranked", std::move(ranked)}};
  });

  const std::string out = OrDefault(args.out, InRun(config, "links.jsonl"));
  WriteRecords(out, records);
  console.err << "linked " << items.size() << " mentions\n";
  UpdateManifest(config, "link", {out});
}

void RunEval(const PipelineConfig &config, const EvalArgs &args,
             Console &console) {
  const std::string gold_path =
      args.gold.empty() ? config.Require("eval_questions") : args.gold;
  std::vector<Question> gold = LoadQuestions(gold_path);
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < gold.size(); ++i) index[gold[i].id] = i;

  std::vector<std::vector<LinkedSpan>> predicted(gold.size());
  std::vector<std::vector<LinkedSpan>> expected(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) {
    for (const auto &g : gold[i].entities) expected[i].push_back({g.span, g.kb_id});
  }

  // Accepts link records, discovery records, or annotated questions.
  const std::string pred_path =
      OrDefault(args.predictions, InRun(config, "links.jsonl"));
  ForEachJsonLine(pred_path, [&](const nlohmann::json &record) {
    if (!record.is_object()) throw InvalidArgument("record is not an object");
    auto slot = [&](const std::string &id) -> size_t {
      auto it = index.find(id);
      if (it == index.end()) {
        throw InvalidArgument("question '" + id + "' is not in " + gold_path);
      }
      return it->second;
    };
    auto check_bounds = [&](size_t q, Span span) {
      const int length = CodePointLength(gold[q].text);
      if (span.start < 0 || span.end > length || span.start >= span.end) {
        throw InvalidArgument("span [" + std::to_string(span.start) + ", " +
                              std::to_string(span.end) +
                              ") is outside question '" + gold[q].id + "'");
      }
    };
    if (record.contains("question_id")) {
      const size_t q = slot(QuestionId(record, "question_id"));
      Mention m = Mention::FromJson(Field(record, "mention"));
      check_bounds(q, m.span());
      const auto &ranked = Field(record, "ranked");
      if (!ranked.is_array()) throw InvalidArgument("'ranked' must be a list");
      std::string top;
      if (!ranked.empty()) {
        const auto &first = Field(ranked[0], "entity_id");
        if (!first.is_string()) {
          throw InvalidArgument("'entity_id' must be a string");
        }
        top = first.get<std::string>();
      }
      predicted[q].push_back({m.span(), top});
    } else if (record.contains("mentions")) {
      const size_t q = slot(QuestionId(record, "id"));
      const auto &list = Field(record, "mentions");
      if (!list.is_array()) throw InvalidArgument("'mentions' must be a list");
      for (const auto &j : list) {
        Mention m = Mention::FromJson(j);
        check_bounds(q, m.span());
        predicted[q].push_back({m.span(), ""});
      }
    } else if (record.contains("entities")) {
      Question p = Question::FromJson(record);
      const size_t q = slot(p.id);
      for (const auto &g : p.entities) predicted[q].push_back({g.span, g.kb_id});
    } else {
      throw InvalidArgument(
          "record is not a link, discovery or question record");
    }
  });

  std::vector<std::vector<Span>> pred_spans(gold.size()), gold_spans(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) {
    for (const auto &p : predicted[i]) pred_spans[i].push_back(p.span);
    for (const auto &g : expected[i]) gold_spans[i].push_back(g.span);
  }
  QedReport qed = QedMetrics(pred_spans, gold_spans);
  ElReport el = ElAccuracy(predicted, expected);
  QedReport overall = OverallMetrics(predicted, expected);

  const std::string dir = OrDefault(args.out_dir, config.RunDir());
  nlohmann::ordered_json report;
  report["qed"] = qed.ToJson();
  report["el"] = el.ToJson();
  report["overall"] = overall.ToJson();
  const std::string json_path = (fs::path(dir) / "eval.json").string();
  const std::string text_path = (fs::path(dir) / "eval.txt").string();
  const std::string text = ReportsText(qed, el, overall);
  WriteJson(json_path, report);
  WriteText(text_path, text);
  console.out << text;
  std::vector<std::string> outputs = {json_path, text_path};

  if (args.ablation) {
    KgStore store = LoadStore(config);
    EmbeddingTable embeddings =
        EmbeddingTable::Load(config.Require("embeddings"));
    CorpusModels models = LoadOrFitModels(
        config, store, SimilarityPath(config, args.similarity), console);
    SimilarityContext context(store, embeddings, models,
                              config.similarity.bm25, config.similarity.avge);
    auto train = LinkingCasesFromGold(LoadQuestions(config.Require("questions")),
                                      context);
    auto test = LinkingCasesFromGold(gold, context);
    std::vector<AblationRow> rows =
        RunAblation(train, test, config.ranker.options);
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
      j.push_back({{"protocol", r.protocol},
                   {"features", r.features},
                   {"accuracy", r.accuracy}});
    }
    const std::string ab_json = (fs::path(dir) / "ablation.json").string();
    const std::string ab_text = (fs::path(dir) / "ablation.txt").string();
    WriteJson(ab_json, j);
    const std::string table = AblationText(rows);
    WriteText(ab_text, table);
    console.out << "\n" << table;
    outputs.push_back(ab_json);
    outputs.push_back(ab_text);
  }
  UpdateManifest(config, "eval", outputs);
}

void RunSweep(const PipelineConfig &config, const SweepArgs &args,
              Console &console) {
  if (config.sweep.sizes.empty()) {
    throw ConfigError("config field 'sweep.sizes' is required (or pass --sizes)");
  }
  KgStore store = LoadStore(config);
  DocumentFrequencies df = LoadDf(config);
  const std::string questions_path = args.questions.empty()
                                         ? config.Require("sweep_questions")
                                         : args.questions;
  std::vector<Question> questions = LoadQuestions(questions_path);
  QedResources res =
      MakeResources(store, df, config.qed.max_n, config.qed.df_buckets);
  SweepOptions options;
  options.sizes = config.sweep.sizes;
  options.methods = config.sweep.methods;
  options.holdout_fraction = config.sweep.holdout_fraction;
  options.seed = config.sweep.seed;
  options.crf = config.qed.crf;
  SweepReport report = ConvergenceSweep(questions, res, options);

  const std::string dir = OrDefault(args.out_dir, config.RunDir());
  const std::string csv = (fs::path(dir) / "sweep.csv").string();
  const std::string json = (fs::path(dir) / "sweep.json").string();
  const std::string text = (fs::path(dir) / "sweep.txt").string();
  WriteText(csv, report.ToCsv());
  WriteJson(json, report.ToJson());
  WriteText(text, report.ToText());
  console.out << report.ToText();
  UpdateManifest(config, "sweep", {csv, json, text});
}

}  // namespace qedl::cli
