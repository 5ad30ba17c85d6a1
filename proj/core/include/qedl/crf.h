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

#ifndef QEDL_CRF_H_
#define QEDL_CRF_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "qedl/bioes.h"
#include "qedl/crf_features.h"

namespace qedl {

// Feature ids active at each position of one sequence.
using EncodedSequence = std::vector<std::vector<int>>;

// Linear-chain CRF over the five BIOES labels.
//
// Parameters live in one flat vector: the 5x5 transition table first
// (row = previous label), then one block of five label weights per
// feature. score(y) = sum_t sum_{f active at t} w[f][y_t]
//                   + sum_{t>0} trans[y_{t-1}][y_t].
class CrfModel {
 public:
  static constexpr int kFormatVersion = 1;

  CrfModel() = default;
  explicit CrfModel(std::vector<std::string> templates);

  const std::vector<std::string> &templates() const { return templates_; }
  bool UsesTemplate(std::string_view id) const;

  // Registers a feature key and returns its id (existing id if known).
  int AddFeature(const std::string &key);
  // -1 for keys never seen in training.
  int FeatureId(const std::string &key) const;
  int num_features() const { return static_cast<int>(feature_keys_.size()); }
  const std::vector<std::string> &feature_keys() const { return feature_keys_; }

  double transition(Label from, Label to) const {
    return params_[LabelIndex(from) * kNumLabels + LabelIndex(to)];
  }
  double &transition(Label from, Label to) {
    return params_[LabelIndex(from) * kNumLabels + LabelIndex(to)];
  }
  double weight(int feature, Label label) const {
    return params_[FeatureOffset(feature) + LabelIndex(label)];
  }
  double &weight(int feature, Label label) {
    return params_[FeatureOffset(feature) + LabelIndex(label)];
  }

  static constexpr int kTransitionParams = kNumLabels * kNumLabels;
  static int FeatureOffset(int feature) {
    return kTransitionParams + feature * kNumLabels;
  }
  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  // Maps observations to feature ids; unseen keys are dropped, so they
  // score zero.
  EncodedSequence Encode(const std::vector<CharObservation> &obs) const;
  // Same, registering unseen keys.
  EncodedSequence EncodeAndRegister(const std::vector<CharObservation> &obs);

  // Unary scores, row-major [position][label].
  std::vector<double> UnaryScores(const EncodedSequence &seq) const;

  // Training metadata.
  double l2 = 0.0;
  int epochs = 0;
  uint64_t seed = 0;
  double objective = 0.0;
  // Discovery settings the features were built with.
  int max_n = 4;
  int df_buckets = kDefaultDfBuckets;

  nlohmann::ordered_json ToJson() const;
  // Throws ModelError on unknown version or a different label order.
  static CrfModel FromJson(const nlohmann::json &j);
  void Save(const std::string &path) const;
  static CrfModel Load(const std::string &path);

 private:
  std::vector<std::string> templates_;
  std::vector<std::string> feature_keys_;
  std::unordered_map<std::string, int> feature_index_;
  std::vector<double> params_ = std::vector<double>(kTransitionParams, 0.0);
};

// log of the sum over all label paths of exp(score). Computed with
// log-sum-exp recursions. Throws InvalidArgument on an empty sequence.
double LogPartition(const CrfModel &model,
                    const std::vector<CharObservation> &obs);
double LogPartition(const CrfModel &model, const EncodedSequence &seq);

// Score of one label path.
double PathScore(const CrfModel &model, const EncodedSequence &seq,
                 std::span<const Label> labels);

// Highest-scoring path. Ties go to the lower label index, both when
// choosing the final label and at every back-pointer, so among equally
// good paths the one that is smallest read from the end is returned.
// Throws InvalidArgument on an empty sequence.
std::vector<Label> Viterbi(const CrfModel &model,
                           const std::vector<CharObservation> &obs);
std::vector<Label> Viterbi(const CrfModel &model, const EncodedSequence &seq);

// Per-position label marginals P(y_t = l | x), row-major [t][l].
std::vector<double> Marginals(const CrfModel &model,
                              const EncodedSequence &seq);

struct LabeledSequence {
  std::vector<CharObservation> observations;
  std::vector<Label> labels;
};

struct EncodedExample {
  EncodedSequence features;
  std::vector<Label> labels;
};

// Penalized log-likelihood  sum_i log p(y_i | x_i) - l2 * ||w||^2  at the
// model's current parameters. When `gradient` is non-null it receives the
// gradient with the parameter layout of CrfModel.
double CrfObjective(const CrfModel &model,
                    const std::vector<EncodedExample> &data, double l2,
                    std::vector<double> *gradient);

struct CrfTrainingOptions {
  double l2 = 0.1;
  int epochs = 200;
  uint64_t seed = 0;
  // Gradient-ascent step on the per-sequence mean objective. Halved (and
  // the step rejected) whenever the objective would decrease.
  double step_size = 1.0;
};

// Full-batch gradient ascent from zero weights. The feature dictionary is
// built from the corpus. `history`, if given, receives the objective
// before the first epoch and after each one. Throws InvalidArgument on an
// empty corpus or negative l2.
CrfModel TrainCrf(const std::vector<LabeledSequence> &corpus,
                  const std::vector<std::string> &templates,
                  const CrfTrainingOptions &options,
                  std::vector<double> *history = nullptr);

}  // namespace qedl

#endif  // QEDL_CRF_H_
