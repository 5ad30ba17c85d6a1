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

#ifndef QEDL_TOOLS_PIPELINE_CONFIG_H_
#define QEDL_TOOLS_PIPELINE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qedl/crf.h"
#include "qedl/fixtures.h"
#include "qedl/qed.h"
#include "qedl/ranker.h"
#include "qedl/similarity.h"

namespace qedl::cli {

// Input files. Relative entries resolve against the config file's
// directory; empty entries fall back to files under data_dir.
struct PathConfig {
  std::string data_dir;
  std::string run_dir = "run";
  std::string cache_dir;  // defaults to <run_dir>/cache
  std::string kg;
  std::string lexicon;
  std::string stopwords;
  std::string embeddings;
  std::string corpus;
  std::string questions;        // training questions
  std::string eval_questions;   // held-out questions
  std::string sweep_questions;  // pool for the training-size sweep
};

struct QedConfig {
  QedMethod method = QedMethod::kEnsemble;
  CrfTrainingOptions crf;
  int max_n = 4;
  int df_buckets = kDefaultDfBuckets;
};

struct SimilarityConfig {
  Bm25Params bm25;
  SimilarityOptions models;
  AvgeMode avge = AvgeMode::kPerMention;
  // Corpus lines are raw text to be segmented rather than pre-tokenized.
  bool segment_corpus = false;
};

struct RankerConfig {
  RankerOptions options;
  unsigned features = kAllFeatures;
};

struct SweepConfig {
  std::vector<int> sizes;
  std::vector<QedMethod> methods = {QedMethod::kCrf, QedMethod::kEnsemble};
  double holdout_fraction = 0.25;
  uint64_t seed = 1;
};

struct PipelineConfig {
  PathConfig paths;
  QedConfig qed;
  SimilarityConfig similarity;
  RankerConfig ranker;
  SweepConfig sweep;
  FixtureConfig fixture;

  // Directory that relative paths resolve against.
  std::string base_dir = ".";

  // Parses and validates. Unknown keys are rejected. Throws ConfigError
  // naming the offending field.
  static PipelineConfig FromJson(const nlohmann::json &j,
                                 const std::string &base_dir);
  static PipelineConfig Load(const std::string &path);

  // Effective settings, with paths as written (not resolved).
  nlohmann::ordered_json ToJson() const;

  // Resolved location of a path field, with the data_dir fallback
  // applied. Returns "" when neither is set.
  std::string Resolve(const std::string &field) const;
  // Like Resolve, but throws ConfigError naming the field when unset.
  std::string Require(const std::string &field) const;

  std::string RunDir() const;
  std::string CacheDir() const;

  // Range checks shared by FromJson and flag overrides.
  void Validate() const;
};

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string Fnv1aHex(std::string_view bytes);

}  // namespace qedl::cli

#endif  // QEDL_TOOLS_PIPELINE_CONFIG_H_
