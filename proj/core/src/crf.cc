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

#include "qedl/crf.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "qedl/errors.h"

namespace qedl {

namespace {

constexpr char kFormatName[] = "qedl-crf";

double LogSumExp(const double *values, int n) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) best = std::max(best, values[i]);
  if (std::isinf(best)) return best;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::exp(values[i] - best);
  return best + std::log(sum);
}

void CheckNonEmpty(size_t length) {
  if (length == 0) throw InvalidArgument("empty observation sequence");
}

}  // namespace

CrfModel::CrfModel(std::vector<std::string> templates)
    : templates_(std::move(templates)) {}

bool CrfModel::UsesTemplate(std::string_view id) const {
  return std::find(templates_.begin(), templates_.end(), id) !=
         templates_.end();
}

int CrfModel::AddFeature(const std::string &key) {
  auto [it, inserted] =
      feature_index_.emplace(key, static_cast<int>(feature_keys_.size()));
  if (inserted) {
    feature_keys_.push_back(key);
    params_.resize(params_.size() + kNumLabels, 0.0);
  }
  return it->second;
}

int CrfModel::FeatureId(const std::string &key) const {
  auto it = feature_index_.find(key);
  return it == feature_index_.end() ? -1 : it->second;
}

EncodedSequence CrfModel::Encode(const std::vector<CharObservation> &obs) const {
  EncodedSequence seq(obs.size());
  for (size_t t = 0; t < obs.size(); ++t) {
    for (const auto &key : FeatureKeys(obs[t], templates_)) {
      int id = FeatureId(key);
      if (id >= 0) seq[t].push_back(id);
    }
  }
  return seq;
}

EncodedSequence CrfModel::EncodeAndRegister(
    const std::vector<CharObservation> &obs) {
  EncodedSequence seq(obs.size());
  for (size_t t = 0; t < obs.size(); ++t) {
    for (const auto &key : FeatureKeys(obs[t], templates_)) {
      seq[t].push_back(AddFeature(key));
    }
  }
  return seq;
}

std::vector<double> CrfModel::UnaryScores(const EncodedSequence &seq) const {
  std::vector<double> scores(seq.size() * kNumLabels, 0.0);
  for (size_t t = 0; t < seq.size(); ++t) {
    double *row = &scores[t * kNumLabels];
    for (int f : seq[t]) {
      const double *w = &params_[FeatureOffset(f)];
      for (int y = 0; y < kNumLabels; ++y) row[y] += w[y];
    }
  }
  return scores;
}

nlohmann::ordered_json CrfModel::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = kFormatName;
  j["version"] = kFormatVersion;
  j["labels"] = std::vector<std::string>(kLabelNames.begin(), kLabelNames.end());
  j["templates"] = templates_;
  j["options"] = {{"max_n", max_n}, {"df_buckets", df_buckets}};
  j["training"] = {{"l2", l2}, {"epochs", epochs}, {"seed", seed},
                   {"objective", objective}};
  nlohmann::ordered_json trans = nlohmann::ordered_json::array();
  for (Label from : kAllLabels) {
    std::vector<double> row;
    for (Label to : kAllLabels) row.push_back(transition(from, to));
    trans.push_back(row);
  }
  j["transitions"] = trans;
  // Sorted by key so files are byte-stable regardless of insertion order.
  std::vector<int> order(feature_keys_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return feature_keys_[a] < feature_keys_[b];
  });
  nlohmann::ordered_json features = nlohmann::ordered_json::object();
  for (int f : order) {
    std::vector<double> w;
    for (Label l : kAllLabels) w.push_back(weight(f, l));
    features[feature_keys_[f]] = w;
  }
  j["features"] = features;
  return j;
}

CrfModel CrfModel::FromJson(const nlohmann::json &j) {
  try {
    if (j.value("format", "") != kFormatName) {
      throw ModelError("not a CRF model file");
    }
    int version = j.at("version").get<int>();
    if (version != kFormatVersion) {
      throw ModelError("unsupported CRF model version " +
                       std::to_string(version));
    }
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels !=
        std::vector<std::string>(kLabelNames.begin(), kLabelNames.end())) {
      throw ModelError("CRF model label order differs from B,I,O,E,S");
    }
    CrfModel model(j.at("templates").get<std::vector<std::string>>());
    const auto &opts = j.at("options");
    model.max_n = opts.at("max_n").get<int>();
    model.df_buckets = opts.at("df_buckets").get<int>();
    const auto &train = j.at("training");
    model.l2 = train.at("l2").get<double>();
    model.epochs = train.at("epochs").get<int>();
    model.seed = train.at("seed").get<uint64_t>();
    model.objective = train.at("objective").get<double>();
    const auto &trans = j.at("transitions");
    if (trans.size() != kNumLabels) throw ModelError("transition table not 5x5");
    for (int a = 0; a < kNumLabels; ++a) {
      if (trans[a].size() != kNumLabels) {
        throw ModelError("transition table not 5x5");
      }
      for (int b = 0; b < kNumLabels; ++b) {
        model.transition(LabelAt(a), LabelAt(b)) = trans[a][b].get<double>();
      }
    }
    const auto &features = j.at("features");
    for (auto it = features.begin(); it != features.end(); ++it) {
      if (it.value().size() != kNumLabels) {
        throw ModelError("feature '" + it.key() + "' needs 5 weights");
      }
      int f = model.AddFeature(it.key());
      for (int y = 0; y < kNumLabels; ++y) {
        model.weight(f, LabelAt(y)) = it.value()[y].get<double>();
      }
    }
    for (double w : model.params_) {
      if (!std::isfinite(w)) throw ModelError("non-finite CRF weight");
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(std::string("malformed CRF model: ") + e.what());
  }
}

void CrfModel::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << ToJson().dump(1) << '\n';
}

CrfModel CrfModel::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CRF model " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(path + ": " + e.what());
  }
  try {
    return FromJson(j);
  } catch (const ModelError &e) {
    throw ModelError(path + ": " + e.what());
  }
}

double LogPartition(const CrfModel &model,
                    const std::vector<CharObservation> &obs) {
  CheckNonEmpty(obs.size());
  return LogPartition(model, model.Encode(obs));
}

double LogPartition(const CrfModel &model, const EncodedSequence &seq) {
  CheckNonEmpty(seq.size());
  const std::vector<double> unary = model.UnaryScores(seq);
  double alpha[kNumLabels];
  double next[kNumLabels];
  double terms[kNumLabels];
  for (int y = 0; y < kNumLabels; ++y) alpha[y] = unary[y];
  for (size_t t = 1; t < seq.size(); ++t) {
    for (int y = 0; y < kNumLabels; ++y) {
      for (int p = 0; p < kNumLabels; ++p) {
        terms[p] = alpha[p] + model.transition(LabelAt(p), LabelAt(y));
      }
      next[y] = LogSumExp(terms, kNumLabels) + unary[t * kNumLabels + y];
    }
    std::copy(next, next + kNumLabels, alpha);
  }
  return LogSumExp(alpha, kNumLabels);
}

double PathScore(const CrfModel &model, const EncodedSequence &seq,
                 std::span<const Label> labels) {
  if (labels.size() != seq.size()) {
    throw InvalidArgument("label path length differs from sequence length");
  }
  const std::vector<double> unary = model.UnaryScores(seq);
  double score = 0.0;
  for (size_t t = 0; t < seq.size(); ++t) {
    if (t > 0) score += model.transition(labels[t - 1], labels[t]);
    score += unary[t * kNumLabels + LabelIndex(labels[t])];
  }
  return score;
}

std::vector<Label> Viterbi(const CrfModel &model,
                           const std::vector<CharObservation> &obs) {
  CheckNonEmpty(obs.size());
  return Viterbi(model, model.Encode(obs));
}

std::vector<Label> Viterbi(const CrfModel &model, const EncodedSequence &seq) {
  CheckNonEmpty(seq.size());
  const size_t length = seq.size();
  const std::vector<double> unary = model.UnaryScores(seq);
  std::vector<double> delta(length * kNumLabels);
  std::vector<int> back(length * kNumLabels, 0);
  for (int y = 0; y < kNumLabels; ++y) delta[y] = unary[y];
  for (size_t t = 1; t < length; ++t) {
    for (int y = 0; y < kNumLabels; ++y) {
      int best = 0;
      double best_score = delta[(t - 1) * kNumLabels] +
                          model.transition(LabelAt(0), LabelAt(y));
      for (int p = 1; p < kNumLabels; ++p) {
        double s = delta[(t - 1) * kNumLabels + p] +
                   model.transition(LabelAt(p), LabelAt(y));
        // Strict comparison keeps the lower index on ties.
        if (s > best_score) {
          best_score = s;
          best = p;
        }
      }
      delta[t * kNumLabels + y] = best_score + unary[t * kNumLabels + y];
      back[t * kNumLabels + y] = best;
    }
  }
  int y = 0;
  for (int k = 1; k < kNumLabels; ++k) {
    if (delta[(length - 1) * kNumLabels + k] >
        delta[(length - 1) * kNumLabels + y]) {
      y = k;
    }
  }
  std::vector<Label> path(length);
  for (size_t t = length; t-- > 0;) {
    path[t] = LabelAt(y);
    y = back[t * kNumLabels + y];
  }
  return path;
}

namespace {

struct Lattice {
  std::vector<double> unary;
  std::vector<double> alpha;
  std::vector<double> beta;
  double log_z = 0.0;
};

Lattice ForwardBackward(const CrfModel &model, const EncodedSequence &seq) {
  const size_t length = seq.size();
  Lattice lat;
  lat.unary = model.UnaryScores(seq);
  lat.alpha.assign(length * kNumLabels, 0.0);
  lat.beta.assign(length * kNumLabels, 0.0);
  double terms[kNumLabels];
  for (int y = 0; y < kNumLabels; ++y) lat.alpha[y] = lat.unary[y];
  for (size_t t = 1; t < length; ++t) {
    for (int y = 0; y < kNumLabels; ++y) {
      for (int p = 0; p < kNumLabels; ++p) {
        terms[p] = lat.alpha[(t - 1) * kNumLabels + p] +
                   model.transition(LabelAt(p), LabelAt(y));
      }
      lat.alpha[t * kNumLabels + y] =
          LogSumExp(terms, kNumLabels) + lat.unary[t * kNumLabels + y];
    }
  }
  for (size_t t = length - 1; t-- > 0;) {
    for (int y = 0; y < kNumLabels; ++y) {
      for (int n = 0; n < kNumLabels; ++n) {
        terms[n] = model.transition(LabelAt(y), LabelAt(n)) +
                   lat.unary[(t + 1) * kNumLabels + n] +
                   lat.beta[(t + 1) * kNumLabels + n];
      }
      lat.beta[t * kNumLabels + y] = LogSumExp(terms, kNumLabels);
    }
  }
  lat.log_z = LogSumExp(&lat.alpha[(length - 1) * kNumLabels], kNumLabels);
  return lat;
}

}  // namespace

std::vector<double> Marginals(const CrfModel &model,
                              const EncodedSequence &seq) {
  CheckNonEmpty(seq.size());
  Lattice lat = ForwardBackward(model, seq);
  std::vector<double> out(seq.size() * kNumLabels);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(lat.alpha[i] + lat.beta[i] - lat.log_z);
  }
  return out;
}

double CrfObjective(const CrfModel &model,
                    const std::vector<EncodedExample> &data, double l2,
                    std::vector<double> *gradient) {
  std::span<const double> params = model.parameters();
  if (gradient) gradient->assign(params.size(), 0.0);
  double total = 0.0;
  for (const EncodedExample &ex : data) {
    const EncodedSequence &seq = ex.features;
    if (seq.empty()) continue;
    if (ex.labels.size() != seq.size()) {
      throw InvalidArgument("gold labels and observations differ in length");
    }
    Lattice lat = ForwardBackward(model, seq);
    double gold = 0.0;
    for (size_t t = 0; t < seq.size(); ++t) {
      if (t > 0) gold += model.transition(ex.labels[t - 1], ex.labels[t]);
      gold += lat.unary[t * kNumLabels + LabelIndex(ex.labels[t])];
    }
    total += gold - lat.log_z;
    if (!gradient) continue;

    std::vector<double> &g = *gradient;
    for (size_t t = 0; t < seq.size(); ++t) {
      double marginal[kNumLabels];
      for (int y = 0; y < kNumLabels; ++y) {
        marginal[y] = std::exp(lat.alpha[t * kNumLabels + y] +
                               lat.beta[t * kNumLabels + y] - lat.log_z);
      }
      const int gold_y = LabelIndex(ex.labels[t]);
      for (int f : seq[t]) {
        double *gf = &g[CrfModel::FeatureOffset(f)];
        gf[gold_y] += 1.0;
        for (int y = 0; y < kNumLabels; ++y) gf[y] -= marginal[y];
      }
      if (t == 0) continue;
      g[LabelIndex(ex.labels[t - 1]) * kNumLabels + gold_y] += 1.0;
      for (int p = 0; p < kNumLabels; ++p) {
        for (int y = 0; y < kNumLabels; ++y) {
          g[p * kNumLabels + y] -=
              std::exp(lat.alpha[(t - 1) * kNumLabels + p] +
                       model.transition(LabelAt(p), LabelAt(y)) +
                       lat.unary[t * kNumLabels + y] +
                       lat.beta[t * kNumLabels + y] - lat.log_z);
        }
      }
    }
  }
  double norm = 0.0;
  for (double w : params) norm += w * w;
  total -= l2 * norm;
  if (gradient) {
    for (size_t i = 0; i < params.size(); ++i) {
      (*gradient)[i] -= 2.0 * l2 * params[i];
    }
  }
  return total;
}

}  // namespace qedl
