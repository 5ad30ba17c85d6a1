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

#include "qedl/ranker.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "qedl/errors.h"
#include "qedl/random.h"
#include "qedl/segmentation.h"
#include "qedl/text.h"

namespace qedl {

namespace {

constexpr std::array<std::string_view, 4> kGroupNames = {
    "semantic", "ts_qen", "ts_qea", "popularity"};

// Slots owned by each group bit.
unsigned GroupOfSlot(int slot) {
  if (slot == 0) return kSemanticFeatures;
  if (slot <= 3) return kNameTextFeatures;
  if (slot <= 6) return kAttributeTextFeatures;
  return kPopularityFeatures;
}

// Extended accumulator, rounded once: small-integer dot products are exact,
// so equal scores stay equal under positive rescaling of the weights.
double Dot(const ElFeatureVector &a, const ElFeatureVector &b) {
  long double s = 0.0L;
  for (int i = 0; i < kElFeatureCount; ++i) {
    s += static_cast<long double>(a[i]) * b[i];
  }
  return static_cast<double>(s);
}

}  // namespace

unsigned ParseFeatureGroups(std::string_view spec) {
  if (spec == "all") return kAllFeatures;
  unsigned mask = 0;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string_view item = spec.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    bool found = false;
    for (size_t g = 0; g < kGroupNames.size(); ++g) {
      if (item == kGroupNames[g]) {
        mask |= 1u << g;
        found = true;
      }
    }
    if (!found) {
      throw InvalidArgument("unknown feature group '" + std::string(item) +
                            "' (expected semantic, ts_qen, ts_qea, "
                            "popularity or all)");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return mask;
}

std::string FeatureGroupsName(unsigned mask) {
  if (mask == kAllFeatures) return "all";
  std::string out;
  for (size_t g = 0; g < kGroupNames.size(); ++g) {
    if (!(mask & (1u << g))) continue;
    if (!out.empty()) out += ',';
    out += kGroupNames[g];
  }
  return out;
}

void ApplyFeatureMask(unsigned mask, ElFeatureVector &features) {
  for (int i = 0; i < kElFeatureCount; ++i) {
    if (!(mask & GroupOfSlot(i))) features[i] = 0.0;
  }
}

SimilarityContext::SimilarityContext(const KgStore &store,
                                     const EmbeddingTable &embeddings,
                                     const CorpusModels &models,
                                     Bm25Params bm25, AvgeMode avge_mode)
    : store_(store),
      embeddings_(embeddings),
      models_(models),
      bm25_(bm25),
      avge_mode_(avge_mode) {
  if (avge_mode_ == AvgeMode::kGlobal) {
    double total = 0.0;
    for (const auto &[id, entity] : store_.entities()) {
      total += static_cast<double>(EntityTerms(entity).size());
    }
    if (store_.size() > 0 && total > 0.0) global_avge_ = total / store_.size();
  }
}

std::vector<std::string> SimilarityContext::Terms(std::string_view text) const {
  std::vector<std::string> terms;
  for (const Token &tok : SegmentFmm(DecodeUtf8(text), store_)) {
    std::string key = Normalize(tok.surface);
    if (key.empty() || key == "_" || store_.stopwords().contains(key)) {
      continue;
    }
    terms.push_back(std::move(key));
  }
  return terms;
}

std::vector<std::string> SimilarityContext::AttributeTerms(
    const KgEntity &entity) const {
  std::vector<std::string> terms;
  for (const auto &[name, value] : entity.attributes) {
    auto part = Terms(value);
    terms.insert(terms.end(), part.begin(), part.end());
  }
  return terms;
}

std::vector<std::string> SimilarityContext::EntityTerms(
    const KgEntity &entity) const {
  std::vector<std::string> terms = Terms(entity.name);
  auto attrs = AttributeTerms(entity);
  terms.insert(terms.end(), attrs.begin(), attrs.end());
  return terms;
}

std::vector<const KgEntity *> GenerateElCandidates(const Mention &mention,
                                                   const KgStore &store) {
  std::vector<const KgEntity *> out;
  // IdSet is ordered, so candidates come out sorted by id.
  for (const auto &id : store.LookupSurface(mention.surface)) {
    if (const KgEntity *e = store.Find(id)) out.push_back(e);
  }
  return out;
}

ElFeatureVector BuildFeatures(std::string_view question,
                              const KgEntity &entity,
                              const SimilarityContext &context, double avge) {
  const CorpusModels &models = context.models();
  const std::vector<std::string> q = context.Terms(question);
  const std::vector<std::string> name = context.Terms(entity.name);
  const std::vector<std::string> attrs = context.AttributeTerms(entity);
  std::vector<std::string> all = name;
  all.insert(all.end(), attrs.begin(), attrs.end());

  ElFeatureVector f{};
  f[0] = all.empty() ? 0.0
                     : SemanticSimilarity(q, all, context.embeddings(),
                                          models.idf, context.bm25(), avge);
  f[1] = models.TfidfSimilarity(q, name);
  f[2] = models.LsiSimilarity(q, name);
  f[3] = models.LdaSimilarity(q, name);
  f[4] = models.TfidfSimilarity(q, attrs);
  f[5] = models.LsiSimilarity(q, attrs);
  f[6] = models.LdaSimilarity(q, attrs);
  f[7] = PopularityFeature(entity);
  return f;
}

std::vector<ElFeatureVector> BuildCandidateFeatures(
    std::string_view question, const std::vector<const KgEntity *> &candidates,
    const SimilarityContext &context, unsigned mask) {
  double avge = context.global_avge();
  if (context.avge_mode() == AvgeMode::kPerMention && !candidates.empty()) {
    double total = 0.0;
    for (const KgEntity *e : candidates) {
      total += static_cast<double>(context.EntityTerms(*e).size());
    }
    avge = total > 0.0 ? total / candidates.size() : 1.0;
  }
  std::vector<ElFeatureVector> out;
  out.reserve(candidates.size());
  for (const KgEntity *e : candidates) {
    ElFeatureVector f = BuildFeatures(question, *e, context, avge);
    ApplyFeatureMask(mask, f);
    out.push_back(f);
  }
  return out;
}

ElFeatureVector RankModel::Normalize(const ElFeatureVector &x) const {
  ElFeatureVector z;
  for (int i = 0; i < kElFeatureCount; ++i) z[i] = (x[i] - mean[i]) / scale[i];
  return z;
}

double RankModel::Score(const ElFeatureVector &x) const {
  return Dot(weights, Normalize(x));
}

nlohmann::ordered_json RankModel::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "qedl-ranker";
  j["version"] = kFormatVersion;
  j["layout"] = std::vector<std::string>(kElFeatureLayout.begin(),
                                         kElFeatureLayout.end());
  j["features"] = FeatureGroupsName(feature_mask);
  j["weights"] = weights;
  j["mean"] = mean;
  j["scale"] = scale;
  j["training"] = {{"l2", l2}, {"epochs", epochs}, {"seed", seed}};
  return j;
}

RankModel RankModel::FromJson(const nlohmann::json &j) {
  try {
    if (j.value("format", "") != "qedl-ranker") {
      throw ModelError("not a ranking model file");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw ModelError("unsupported ranking model version");
    }
    if (j.at("layout").get<std::vector<std::string>>() !=
        std::vector<std::string>(kElFeatureLayout.begin(),
                                 kElFeatureLayout.end())) {
      throw ModelError("ranking model feature layout differs");
    }
    RankModel model;
    model.feature_mask = ParseFeatureGroups(j.at("features").get<std::string>());
    model.weights = j.at("weights").get<ElFeatureVector>();
    model.mean = j.at("mean").get<ElFeatureVector>();
    model.scale = j.at("scale").get<ElFeatureVector>();
    const auto &train = j.at("training");
    model.l2 = train.at("l2").get<double>();
    model.epochs = train.at("epochs").get<int>();
    model.seed = train.at("seed").get<uint64_t>();
    for (int i = 0; i < kElFeatureCount; ++i) {
      if (!std::isfinite(model.weights[i]) || !(model.scale[i] > 0.0)) {
        throw ModelError("invalid ranking model weights");
      }
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(std::string("malformed ranking model: ") + e.what());
  } catch (const InvalidArgument &e) {
    throw ModelError(e.what());
  }
}

void RankModel::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << ToJson().dump(1) << '\n';
}

RankModel RankModel::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ranking model " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(path + ": " + e.what());
  }
  return FromJson(j);
}

double PairwiseObjective(const ElFeatureVector &w,
                         const std::vector<ElFeatureVector> &differences,
                         double l2, ElFeatureVector *gradient) {
  double loss = 0.0;
  if (gradient) gradient->fill(0.0);
  for (const auto &d : differences) {
    const double margin = Dot(w, d);
    if (margin < 1.0) {
      loss += 1.0 - margin;
      if (gradient) {
        for (int i = 0; i < kElFeatureCount; ++i) (*gradient)[i] -= d[i];
      }
    }
  }
  loss += l2 * Dot(w, w);
  if (gradient) {
    for (int i = 0; i < kElFeatureCount; ++i) (*gradient)[i] += 2.0 * l2 * w[i];
  }
  return loss;
}

std::vector<ElFeatureVector> PairDifferences(
    const RankModel &model, const std::vector<RankingExample> &examples) {
  std::vector<ElFeatureVector> out;
  for (const auto &ex : examples) {
    const ElFeatureVector gold = model.Normalize(ex.gold);
    for (const auto &neg : ex.negatives) {
      const ElFeatureVector n = model.Normalize(neg);
      ElFeatureVector d;
      for (int i = 0; i < kElFeatureCount; ++i) d[i] = gold[i] - n[i];
      out.push_back(d);
    }
  }
  return out;
}

RankModel TrainRanker(const std::vector<RankingExample> &examples,
                      const RankerOptions &options,
                      std::vector<double> *history) {
  if (examples.empty()) throw InvalidArgument("empty ranking dataset");
  if (options.l2 < 0.0) throw InvalidArgument("l2 must be non-negative");
  if (options.epochs < 0) throw InvalidArgument("epochs must be >= 0");
  for (const auto &ex : examples) {
    if (ex.negatives.empty()) {
      throw InvalidArgument("query '" + ex.query_id + "' has no negatives");
    }
  }

  RankModel model;
  model.l2 = options.l2;
  model.epochs = options.epochs;
  model.seed = options.seed;

  // Per-slot mean and standard deviation over every candidate vector.
  double count = 0.0;
  ElFeatureVector sum{}, sum_sq{};
  for (const auto &ex : examples) {
    auto add = [&](const ElFeatureVector &x) {
      for (int i = 0; i < kElFeatureCount; ++i) {
        sum[i] += x[i];
        sum_sq[i] += x[i] * x[i];
      }
      count += 1.0;
    };
    add(ex.gold);
    for (const auto &n : ex.negatives) add(n);
  }
  for (int i = 0; i < kElFeatureCount; ++i) {
    model.mean[i] = sum[i] / count;
    double var = sum_sq[i] / count - model.mean[i] * model.mean[i];
    double sd = var > 0.0 ? std::sqrt(var) : 0.0;
    model.scale[i] = sd > 1e-12 ? sd : 1.0;
  }

  const std::vector<ElFeatureVector> pairs = PairDifferences(model, examples);
  const double num_pairs = static_cast<double>(pairs.size());
  if (history) {
    history->assign(1, PairwiseObjective(model.weights, pairs, options.l2,
                                         nullptr));
  }

  Rng rng(options.seed);
  std::vector<size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), size_t{0});
  ElFeatureVector &w = model.weights;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double eta =
        options.eta0 / (1.0 + static_cast<double>(epoch) / options.epochs);
    const double shrink = 1.0 + 2.0 * eta * options.l2 / num_pairs;
    rng.Shuffle(order);
    for (size_t idx : order) {
      const ElFeatureVector &d = pairs[idx];
      if (Dot(w, d) < 1.0) {
        for (int i = 0; i < kElFeatureCount; ++i) w[i] += eta * d[i];
      }
      for (double &x : w) x /= shrink;
    }
    if (history) {
      history->push_back(PairwiseObjective(w, pairs, options.l2, nullptr));
    }
  }
  return model;
}

std::vector<RankedCandidate> RankCandidates(
    const RankModel &model, const std::vector<ScoredInput> &candidates) {
  std::vector<RankedCandidate> out;
  out.reserve(candidates.size());
  for (const auto &c : candidates) {
    out.push_back({c.entity_id, model.Score(c.features), c.features});
  }
  std::sort(out.begin(), out.end(),
            [](const RankedCandidate &a, const RankedCandidate &b) {
              if (a.score != b.score) return a.score > b.score;
              return a.entity_id < b.entity_id;
            });
  return out;
}

}  // namespace qedl
