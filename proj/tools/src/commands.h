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

#ifndef QEDL_TOOLS_COMMANDS_H_
#define QEDL_TOOLS_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pipeline_config.h"

namespace qedl::cli {

// Destination of progress messages and warnings.
struct Console {
  std::ostream &out;
  std::ostream &err;
};

struct GenFixtureArgs {
  std::string out_dir;  // defaults to paths.data_dir
};

struct TrainQedArgs {
  std::string out;  // defaults to <run>/qed_model.json
};

struct DiscoverArgs {
  std::string model;      // defaults to <run>/qed_model.json
  std::string questions;  // defaults to paths.eval_questions
  std::string out;        // defaults to <run>/mentions.jsonl
  bool iteration = true;
  bool kg_only = false;
  int jobs = 1;
};

struct FitSimilarityArgs {
  std::string out;  // defaults to <cache>/similarity.json
};

struct TrainRankerArgs {
  std::string similarity;  // defaults to <cache>/similarity.json
  std::string out;         // defaults to <run>/ranker.json
};

struct LinkArgs {
  std::string mentions;    // defaults to <run>/mentions.jsonl
  std::string questions;   // defaults to paths.eval_questions
  std::string model;       // defaults to <run>/ranker.json
  std::string similarity;  // defaults to <cache>/similarity.json
  std::optional<unsigned> features;
  std::string out;         // defaults to <run>/links.jsonl
  int jobs = 1;
};

struct EvalArgs {
  std::string predictions;  // defaults to <run>/links.jsonl
  std::string gold;         // defaults to paths.eval_questions
  std::string out_dir;      // defaults to <run>
  std::string similarity;   // for --ablation
  bool ablation = false;
};

struct SweepArgs {
  std::string questions;  // defaults to paths.sweep_questions
  std::string out_dir;    // defaults to <run>
};

void RunGenFixture(const PipelineConfig &config, const GenFixtureArgs &args,
                   Console &console);
void RunTrainQed(const PipelineConfig &config, const TrainQedArgs &args,
                 Console &console);
void RunDiscover(const PipelineConfig &config, const DiscoverArgs &args,
                 Console &console);
void RunFitSimilarity(const PipelineConfig &config,
                      const FitSimilarityArgs &args, Console &console);
void RunTrainRanker(const PipelineConfig &config, const TrainRankerArgs &args,
                    Console &console);
void RunLink(const PipelineConfig &config, const LinkArgs &args,
             Console &console);
void RunEval(const PipelineConfig &config, const EvalArgs &args,
             Console &console);
void RunSweep(const PipelineConfig &config, const SweepArgs &args,
              Console &console);

// Records a finished command and its outputs in <run>/manifest.json.
void UpdateManifest(const PipelineConfig &config, const std::string &command,
                    const std::vector<std::string> &outputs);

}  // namespace qedl::cli

#endif  // QEDL_TOOLS_COMMANDS_H_
