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

#include <algorithm>
#include <cmath>
#include <set>

#include "qedl/errors.h"
#include "qedl/random.h"
#include "qedl/similarity.h"

namespace qedl {

namespace {

// Draws an index with probability proportional to weights[0..n).
int SampleIndex(const std::vector<double> &cumulative, Rng &rng) {
  const double target = rng.Uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) --it;
  return static_cast<int>(it - cumulative.begin());
}

constexpr uint64_t kInferenceSalt = 0x9E3779B97F4A7C15ULL;

}  // namespace

void LdaModel::Fit(const std::vector<Document> &docs,
                   const std::unordered_set<std::string> &stopwords,
                   const LdaOptions &options) {
  if (options.topics < 1) throw InvalidArgument("LDA needs >= 1 topic");
  if (!(options.beta > 0.0)) throw InvalidArgument("LDA beta must be > 0");
  if (options.train_sweeps < 0 || options.infer_sweeps < 1) {
    throw InvalidArgument("LDA sweep counts out of range");
  }
  options_ = options;
  alpha_ = options.alpha > 0.0 ? options.alpha : 50.0 / options.topics;
  stopwords_ = stopwords;

  std::set<std::string> terms;
  for (const auto &doc : docs) {
    for (const auto &t : doc) {
      if (!stopwords.contains(t)) terms.insert(t);
    }
  }
  vocab_.assign(terms.begin(), terms.end());
  index_.clear();
  for (size_t i = 0; i < vocab_.size(); ++i) {
    index_[vocab_[i]] = static_cast<int>(i);
  }

  const int topics = options.topics;
  const int vocab = static_cast<int>(vocab_.size());
  word_topic_.assign(static_cast<size_t>(vocab) * topics, 0);
  topic_totals_.assign(topics, 0);

  std::vector<std::vector<int>> words;
  for (const auto &doc : docs) {
    std::vector<int> ids = Ids(doc);
    if (!ids.empty()) words.push_back(std::move(ids));
  }

  Rng rng(options.seed);
  std::vector<std::vector<int>> assignment(words.size());
  std::vector<std::vector<int>> doc_topic(words.size(),
                                          std::vector<int>(topics, 0));
  for (size_t d = 0; d < words.size(); ++d) {
    assignment[d].resize(words[d].size());
    for (size_t i = 0; i < words[d].size(); ++i) {
      int k = static_cast<int>(rng.UniformInt(topics));
      assignment[d][i] = k;
      ++doc_topic[d][k];
      ++word_topic_[static_cast<size_t>(words[d][i]) * topics + k];
      ++topic_totals_[k];
    }
  }

  const double vocab_beta = vocab * options.beta;
  std::vector<double> cumulative(topics);
  for (int sweep = 0; sweep < options.train_sweeps; ++sweep) {
    for (size_t d = 0; d < words.size(); ++d) {
      for (size_t i = 0; i < words[d].size(); ++i) {
        const int w = words[d][i];
        int k = assignment[d][i];
        int *wt = &word_topic_[static_cast<size_t>(w) * topics];
        --doc_topic[d][k];
        --wt[k];
        --topic_totals_[k];
        double running = 0.0;
        for (int t = 0; t < topics; ++t) {
          running += (doc_topic[d][t] + alpha_) * (wt[t] + options.beta) /
                     (topic_totals_[t] + vocab_beta);
          cumulative[t] = running;
        }
        k = SampleIndex(cumulative, rng);
        assignment[d][i] = k;
        ++doc_topic[d][k];
        ++wt[k];
        ++topic_totals_[k];
      }
    }
  }
  fitted_ = true;
}

std::vector<int> LdaModel::Ids(const std::vector<std::string> &terms) const {
  std::vector<int> ids;
  for (const auto &t : terms) {
    if (stopwords_.contains(t)) continue;
    auto it = index_.find(t);
    if (it != index_.end()) ids.push_back(it->second);
  }
  return ids;
}

std::vector<double> LdaModel::Infer(const std::vector<std::string> &terms) const {
  if (!fitted_) throw Error("LDA model is not fitted");
  const int topics = options_.topics;
  const std::vector<int> ids = Ids(terms);
  const double denom_base = ids.size() + topics * alpha_;
  std::vector<double> theta(topics, 0.0);
  if (ids.empty()) {
    std::fill(theta.begin(), theta.end(), 1.0 / topics);
    return theta;
  }

  Rng rng(options_.seed ^ kInferenceSalt);
  const double vocab_beta = vocab_.size() * options_.beta;
  std::vector<int> assignment(ids.size());
  std::vector<int> counts(topics, 0);
  for (size_t i = 0; i < ids.size(); ++i) {
    assignment[i] = static_cast<int>(rng.UniformInt(topics));
    ++counts[assignment[i]];
  }
  std::vector<double> cumulative(topics);
  const int sweeps = options_.infer_sweeps;
  const int first_kept = sweeps / 2;
  int kept = 0;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (size_t i = 0; i < ids.size(); ++i) {
      const int *wt = &word_topic_[static_cast<size_t>(ids[i]) * topics];
      --counts[assignment[i]];
      double running = 0.0;
      for (int t = 0; t < topics; ++t) {
        running += (counts[t] + alpha_) * (wt[t] + options_.beta) /
                   (topic_totals_[t] + vocab_beta);
        cumulative[t] = running;
      }
      assignment[i] = SampleIndex(cumulative, rng);
      ++counts[assignment[i]];
    }
    if (sweep >= first_kept) {
      for (int t = 0; t < topics; ++t) {
        theta[t] += (counts[t] + alpha_) / denom_base;
      }
      ++kept;
    }
  }
  double total = 0.0;
  for (double &x : theta) {
    x /= kept;
    total += x;
  }
  // Renormalize away accumulated rounding.
  for (double &x : theta) x /= total;
  return theta;
}

double LdaModel::Similarity(const std::vector<std::string> &a,
                            const std::vector<std::string> &b) const {
  if (!fitted_) throw Error("LDA model is not fitted");
  if (Ids(a).empty() || Ids(b).empty()) return 0.0;
  return Cosine(Infer(a), Infer(b));
}

double LdaModel::TopicWordProbability(int topic, const std::string &term) const {
  auto it = index_.find(term);
  const int topics = options_.topics;
  const double count =
      it == index_.end()
          ? 0.0
          : word_topic_[static_cast<size_t>(it->second) * topics + topic];
  return (count + options_.beta) /
         (topic_totals_[topic] + vocab_.size() * options_.beta);
}

nlohmann::json LdaModel::ToJson() const {
  nlohmann::json j;
  j["fitted"] = fitted_;
  if (!fitted_) return j;
  j["topics"] = options_.topics;
  j["alpha"] = alpha_;
  j["beta"] = options_.beta;
  j["train_sweeps"] = options_.train_sweeps;
  j["infer_sweeps"] = options_.infer_sweeps;
  j["seed"] = options_.seed;
  j["vocabulary"] = vocab_;
  std::vector<std::string> stop(stopwords_.begin(), stopwords_.end());
  std::sort(stop.begin(), stop.end());
  j["stopwords"] = stop;
  j["word_topic"] = word_topic_;
  return j;
}

LdaModel LdaModel::FromJson(const nlohmann::json &j) {
  LdaModel model;
  model.fitted_ = j.at("fitted").get<bool>();
  if (!model.fitted_) return model;
  model.options_.topics = j.at("topics").get<int>();
  model.alpha_ = j.at("alpha").get<double>();
  model.options_.alpha = model.alpha_;
  model.options_.beta = j.at("beta").get<double>();
  model.options_.train_sweeps = j.at("train_sweeps").get<int>();
  model.options_.infer_sweeps = j.at("infer_sweeps").get<int>();
  model.options_.seed = j.at("seed").get<uint64_t>();
  model.vocab_ = j.at("vocabulary").get<std::vector<std::string>>();
  for (const auto &s : j.at("stopwords")) {
    model.stopwords_.insert(s.get<std::string>());
  }
  model.word_topic_ = j.at("word_topic").get<std::vector<int>>();
  const int topics = model.options_.topics;
  if (model.word_topic_.size() != model.vocab_.size() * topics) {
    throw ModelError("LDA word-topic table has the wrong size");
  }
  for (size_t i = 0; i < model.vocab_.size(); ++i) {
    model.index_[model.vocab_[i]] = static_cast<int>(i);
  }
  model.topic_totals_.assign(topics, 0);
  for (size_t w = 0; w < model.vocab_.size(); ++w) {
    for (int k = 0; k < topics; ++k) {
      model.topic_totals_[k] += model.word_topic_[w * topics + k];
    }
  }
  return model;
}

}  // namespace qedl
