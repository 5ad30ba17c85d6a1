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

#include "cli.h"

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "qedl/errors.h"

namespace qedl::cli {

namespace fs = std::filesystem;

namespace {

// Flag values that override the config file. Paths given on the command
// line are relative to the working directory.
struct Overrides {
  std::string config;
  std::string data_dir, run_dir, cache_dir;
  std::string kg, lexicon, stopwords, embeddings, corpus;
  std::string questions, eval_questions, sweep_questions;

  std::optional<std::string> qed_method;
  std::optional<int> qed_epochs;
  std::optional<double> qed_l2;
  std::optional<uint64_t> qed_seed;
  std::optional<double> qed_step;

  std::optional<bool> segment_corpus;
  std::optional<int> lsi_rank;
  std::optional<int> lda_topics;
  std::optional<uint64_t> lda_seed;

  std::optional<std::string> ranker_features;
  std::optional<int> ranker_epochs;
  std::optional<double> ranker_l2;
  std::optional<uint64_t> ranker_seed;

  std::optional<std::string> sweep_sizes;
  std::optional<std::string> sweep_methods;
  std::optional<uint64_t> sweep_seed;

  std::optional<uint64_t> fixture_seed;
  std::optional<int> fixture_entities;
  std::optional<int> fixture_questions;
  std::optional<double> fixture_ambiguity;
};

std::string Absolute(const std::string &p) {
  return p.empty() ? p : fs::absolute(p).lexically_normal().string();
}

void SetPath(std::string &field, const std::string &flag) {
  if (!flag.empty()) field = Absolute(flag);
}

std::vector<std::string> SplitList(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

PipelineConfig BuildConfig(const Overrides &o) {
  PipelineConfig c;
  if (!o.config.empty()) {
    c = PipelineConfig::Load(o.config);
  } else {
    c.base_dir = fs::current_path().string();
  }
  SetPath(c.paths.data_dir, o.data_dir);
  SetPath(c.paths.run_dir, o.run_dir);
  SetPath(c.paths.cache_dir, o.cache_dir);
  SetPath(c.paths.kg, o.kg);
  SetPath(c.paths.lexicon, o.lexicon);
  SetPath(c.paths.stopwords, o.stopwords);
  SetPath(c.paths.embeddings, o.embeddings);
  SetPath(c.paths.corpus, o.corpus);
  SetPath(c.paths.questions, o.questions);
  SetPath(c.paths.eval_questions, o.eval_questions);
  SetPath(c.paths.sweep_questions, o.sweep_questions);

  if (o.qed_method) {
    try {
      c.qed.method = ParseQedMethod(*o.qed_method);
    } catch (const std::exception &e) {
      throw ConfigError(std::string("--method: ") + e.what());
    }
  }
  if (o.qed_epochs) c.qed.crf.epochs = *o.qed_epochs;
  if (o.qed_l2) c.qed.crf.l2 = *o.qed_l2;
  if (o.qed_seed) c.qed.crf.seed = *o.qed_seed;
  if (o.qed_step) c.qed.crf.step_size = *o.qed_step;

  if (o.segment_corpus) c.similarity.segment_corpus = *o.segment_corpus;
  if (o.lsi_rank) c.similarity.models.lsi_rank = *o.lsi_rank;
  if (o.lda_topics) c.similarity.models.lda.topics = *o.lda_topics;
  if (o.lda_seed) c.similarity.models.lda.seed = *o.lda_seed;

  if (o.ranker_features) {
    try {
      c.ranker.features = ParseFeatureGroups(*o.ranker_features);
    } catch (const std::exception &e) {
      throw ConfigError(std::string("--features: ") + e.what());
    }
  }
  if (o.ranker_epochs) c.ranker.options.epochs = *o.ranker_epochs;
  if (o.ranker_l2) c.ranker.options.l2 = *o.ranker_l2;
  if (o.ranker_seed) c.ranker.options.seed = *o.ranker_seed;

  if (o.sweep_sizes) {
    c.sweep.sizes.clear();
    for (const auto &s : SplitList(*o.sweep_sizes)) {
      try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        c.sweep.sizes.push_back(v);
      } catch (const std::exception &) {
        throw ConfigError("--sizes: '" + s + "' is not an integer");
      }
    }
  }
  if (o.sweep_methods) {
    c.sweep.methods.clear();
    for (const auto &m : SplitList(*o.sweep_methods)) {
      try {
        c.sweep.methods.push_back(ParseQedMethod(m));
      } catch (const std::exception &e) {
        throw ConfigError(std::string("--methods: ") + e.what());
      }
    }
  }
  if (o.sweep_seed) c.sweep.seed = *o.sweep_seed;

  if (o.fixture_seed) c.fixture.seed = *o.fixture_seed;
  if (o.fixture_entities) c.fixture.n_entities = *o.fixture_entities;
  if (o.fixture_questions) c.fixture.n_questions = *o.fixture_questions;
  if (o.fixture_ambiguity) c.fixture.ambiguity_rate = *o.fixture_ambiguity;

  c.Validate();
  return c;
}

}  // namespace

int Main(int argc, const char *const *argv, std::ostream &out,
         std::ostream &err) {
  CLI::App app{"Question entity discovery and linking pipeline", "qedl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QEDL_VERSION_STRING);

  Overrides o;
  app.add_option("-c,--config", o.config, "JSON pipeline config")
      ->check(CLI::ExistingFile);
  app.add_option("--data-dir", o.data_dir, "Directory with the input files");
  app.add_option("--run-dir", o.run_dir, "Directory for outputs");
  app.add_option("--cache-dir", o.cache_dir, "Directory for fitted models");
  app.add_option("--kg", o.kg, "Entity file (JSON Lines)");
  app.add_option("--lexicon", o.lexicon, "Lexicon file");
  app.add_option("--stopwords", o.stopwords, "Stopword file");
  app.add_option("--embeddings", o.embeddings, "Embedding file");
  app.add_option("--corpus", o.corpus, "Background corpus");
  app.add_option("--train-questions", o.questions, "Training questions");
  app.add_option("--eval-questions", o.eval_questions, "Held-out questions");

  GenFixtureArgs gen;
  auto *gen_cmd = app.add_subcommand("gen-fixture", "Write a synthetic dataset");
  gen_cmd->add_option("-o,--out", gen.out_dir, "Output directory");
  gen_cmd->add_option("--seed", o.fixture_seed, "Generator seed");
  gen_cmd->add_option("--entities", o.fixture_entities, "Number of entities");
  gen_cmd->add_option("--questions", o.fixture_questions, "Number of questions");
  gen_cmd->add_option("--ambiguity", o.fixture_ambiguity,
                      "Fraction of shared surface forms");

  TrainQedArgs train_qed;
  auto *tq_cmd = app.add_subcommand("train-qed", "Train the discovery CRF");
  tq_cmd->add_option("--method", o.qed_method, "crf, ensemble or iteration");
  tq_cmd->add_option("--epochs", o.qed_epochs, "Training epochs");
  tq_cmd->add_option("--l2", o.qed_l2, "L2 strength");
  tq_cmd->add_option("--seed", o.qed_seed, "Seed recorded in the model");
  tq_cmd->add_option("--step-size", o.qed_step, "Initial gradient step");
  tq_cmd->add_option("-o,--out", train_qed.out, "Model file");

  DiscoverArgs discover;
  auto *d_cmd = app.add_subcommand("discover", "Find entity mentions");
  d_cmd->add_option("-m,--model", discover.model, "CRF model file");
  d_cmd->add_option("-q,--questions", discover.questions, "Questions file");
  d_cmd->add_option("-o,--out", discover.out, "Mentions file");
  d_cmd->add_flag("!--no-iteration", discover.iteration,
                  "Skip the lexicon iteration step");
  d_cmd->add_flag("--kg-only", discover.kg_only, "KG retrieval only");
  d_cmd->add_option("-j,--jobs", discover.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  FitSimilarityArgs fit;
  auto *f_cmd = app.add_subcommand("fit-similarity",
                                   "Fit TF-IDF, LSI and LDA models");
  f_cmd->add_flag("--segment-corpus", o.segment_corpus,
                  "Segment raw corpus lines with the lexicon");
  f_cmd->add_option("--lsi-rank", o.lsi_rank, "LSI rank");
  f_cmd->add_option("--lda-topics", o.lda_topics, "LDA topic count");
  f_cmd->add_option("--lda-seed", o.lda_seed, "LDA sampler seed");
  f_cmd->add_option("-o,--out", fit.out, "Model file");

  TrainRankerArgs train_ranker;
  auto *tr_cmd = app.add_subcommand("train-ranker", "Train the linking ranker");
  tr_cmd->add_option("--features", o.ranker_features,
                     "all, or a list of semantic,ts_qen,ts_qea,popularity");
  tr_cmd->add_option("--epochs", o.ranker_epochs, "Training epochs");
  tr_cmd->add_option("--l2", o.ranker_l2, "L2 strength");
  tr_cmd->add_option("--seed", o.ranker_seed, "Shuffle seed");
  tr_cmd->add_option("--similarity", train_ranker.similarity,
                     "Similarity model file");
  tr_cmd->add_option("-o,--out", train_ranker.out, "Model file");

  LinkArgs link;
  std::optional<std::string> link_features;
  auto *l_cmd = app.add_subcommand("link", "Rank candidate entities");
  l_cmd->add_option("--mentions", link.mentions, "Mentions file");
  l_cmd->add_option("-q,--questions", link.questions, "Questions file");
  l_cmd->add_option("-m,--model", link.model, "Ranker model file");
  l_cmd->add_option("--similarity", link.similarity, "Similarity model file");
  l_cmd->add_option("--features", link_features,
                    "Feature groups to keep (others are zeroed)");
  l_cmd->add_option("-o,--out", link.out, "Links file");
  l_cmd->add_option("-j,--jobs", link.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  EvalArgs eval;
  auto *e_cmd = app.add_subcommand("eval", "Score predictions");
  e_cmd->add_option("-p,--predictions", eval.predictions,
                    "Links, mentions or annotated questions");
  e_cmd->add_option("-g,--gold", eval.gold, "Annotated questions");
  e_cmd->add_option("-o,--out-dir", eval.out_dir, "Report directory");
  e_cmd->add_flag("--ablation", eval.ablation, "Also run feature ablation");
  e_cmd->add_option("--similarity", eval.similarity, "Similarity model file");

  SweepArgs sweep;
  auto *s_cmd = app.add_subcommand("sweep", "Training-size sweep");
  s_cmd->add_option("--sizes", o.sweep_sizes, "Comma list of training sizes");
  s_cmd->add_option("--methods", o.sweep_methods, "Comma list of methods");
  s_cmd->add_option("--seed", o.sweep_seed, "Shuffle seed");
  s_cmd->add_option("-q,--questions", sweep.questions, "Question pool");
  s_cmd->add_option("-o,--out-dir", sweep.out_dir, "Report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  Console console{out, err};
  try {
    PipelineConfig config = BuildConfig(o);
    auto abs = [](std::string &p) { p = Absolute(p); };
    if (*gen_cmd) {
      abs(gen.out_dir);
      RunGenFixture(config, gen, console);
    } else if (*tq_cmd) {
      abs(train_qed.out);
      RunTrainQed(config, train_qed, console);
    } else if (*d_cmd) {
      abs(discover.model);
      abs(discover.questions);
      abs(discover.out);
      RunDiscover(config, discover, console);
    } else if (*f_cmd) {
      abs(fit.out);
      RunFitSimilarity(config, fit, console);
    } else if (*tr_cmd) {
      abs(train_ranker.similarity);
      abs(train_ranker.out);
      RunTrainRanker(config, train_ranker, console);
    } else if (*l_cmd) {
      for (std::string *p :
           {&link.mentions, &link.questions, &link.model, &link.similarity,
            &link.out}) {
        abs(*p);
      }
      if (link_features) {
        try {
          link.features = ParseFeatureGroups(*link_features);
        } catch (const std::exception &e) {
          throw ConfigError(std::string("--features: ") + e.what());
        }
      }
      RunLink(config, link, console);
    } else if (*e_cmd) {
      for (std::string *p :
           {&eval.predictions, &eval.gold, &eval.out_dir, &eval.similarity}) {
        abs(*p);
      }
      RunEval(config, eval, console);
    } else if (*s_cmd) {
      abs(sweep.questions);
      abs(sweep.out_dir);
      RunSweep(config, sweep, console);
    }
  } catch (const std::exception &e) {
    err << "qedl: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qedl::cli
