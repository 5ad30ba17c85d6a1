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

#include "qedl/qed.h"

#include <algorithm>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

namespace {

constexpr std::string_view kSourceNames[] = {"KG_RETRIEVAL", "CRF",
                                             "LEXICON_ITERATION"};
constexpr std::string_view kMethodNames[] = {"kg", "crf", "ensemble",
                                             "iteration"};

void SortMentions(std::vector<Mention> &mentions) {
  std::stable_sort(mentions.begin(), mentions.end(),
                   [](const Mention &a, const Mention &b) {
                     return a.span() < b.span();
                   });
}

}  // namespace

std::string_view MentionSourceName(MentionSource source) {
  return kSourceNames[static_cast<int>(source)];
}

MentionSource ParseMentionSource(std::string_view name) {
  for (int i = 0; i < 3; ++i) {
    if (kSourceNames[i] == name) return static_cast<MentionSource>(i);
  }
  throw InvalidArgument("unknown mention source '" + std::string(name) + "'");
}

std::string_view QedMethodName(QedMethod method) {
  return kMethodNames[static_cast<int>(method)];
}

QedMethod ParseQedMethod(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kMethodNames[i] == name) return static_cast<QedMethod>(i);
  }
  throw InvalidArgument("unknown QED method '" + std::string(name) +
                        "' (expected kg, crf, ensemble or iteration)");
}

nlohmann::ordered_json Mention::ToJson() const {
  nlohmann::ordered_json j;
  j["start"] = start;
  j["end"] = end;
  j["surface"] = surface;
  j["source"] = MentionSourceName(source);
  return j;
}

Mention Mention::FromJson(const nlohmann::json &j) {
  Mention m;
  try {
    m.start = j.at("start").get<int>();
    m.end = j.at("end").get<int>();
    m.surface = j.at("surface").get<std::string>();
    m.source = ParseMentionSource(j.value("source", "CRF"));
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("malformed mention: ") + e.what());
  }
  if (m.end <= m.start) throw InvalidArgument("mention with end <= start");
  return m;
}

std::vector<Mention> DiscoverKg(std::u32string_view question,
                                const KgStore &store,
                                const CandidateOptions &options) {
  std::vector<Token> tokens = SegmentFmm(question, store);
  std::vector<Mention> out;
  for (const auto &c : GenerateCandidates(question, tokens, store, options)) {
    out.push_back({c.start, c.end, c.surface, MentionSource::kKgRetrieval});
  }
  return out;
}

std::vector<CharObservation> BuildObservations(std::u32string_view question,
                                               const QedResources &res) {
  std::vector<Token> tokens = SegmentFmm(question, *res.store);
  std::vector<CandidateSpan> kg =
      GenerateCandidates(question, tokens, *res.store, res.candidates);
  static const DocumentFrequencies kEmptyDf;
  return ExtractFeatures(question, tokens, kg, res.df ? *res.df : kEmptyDf,
                         res.store->stopwords(), res.df_buckets);
}

std::vector<Mention> DiscoverCrf(std::u32string_view question,
                                 const CrfModel &model,
                                 const QedResources &res) {
  if (question.empty()) return {};
  std::vector<Label> labels = Viterbi(model, BuildObservations(question, res));
  std::vector<Mention> out;
  for (const Span &s : BioesDecode(labels)) {
    out.push_back(
        {s.start, s.end, Slice(question, s.start, s.end), MentionSource::kCrf});
  }
  return out;
}

std::vector<Mention> OneStepIteration(const std::vector<Mention> &crf_mentions,
                                      const std::vector<Mention> &kg_mentions,
                                      const KgStore &store) {
  std::vector<Mention> out;
  auto already_present = [&](const Mention &m) {
    return std::any_of(out.begin(), out.end(), [&](const Mention &o) {
      return o.span() == m.span();
    });
  };
  for (const Mention &m : crf_mentions) {
    if (!already_present(m)) out.push_back(m);
  }
  for (const Mention &m : kg_mentions) {
    bool ignored_by_crf = std::none_of(
        crf_mentions.begin(), crf_mentions.end(),
        [&](const Mention &c) { return c.span().Overlaps(m.span()); });
    if (!ignored_by_crf || already_present(m)) continue;
    if (!store.InLexicon(m.surface)) continue;
    Mention added = m;
    added.source = MentionSource::kLexiconIteration;
    out.push_back(std::move(added));
  }
  SortMentions(out);
  return out;
}

LabeledSequence MakeTrainingSequence(const Question &question,
                                     const QedResources &res) {
  std::u32string text = DecodeUtf8(question.text);
  LabeledSequence seq;
  seq.observations = BuildObservations(text, res);
  seq.labels = BioesEncode(static_cast<int>(text.size()), question.GoldSpans());
  return seq;
}

CrfModel TrainQed(const std::vector<Question> &questions, QedMethod method,
                  const QedResources &res, const CrfTrainingOptions &options,
                  std::vector<double> *history) {
  if (method == QedMethod::kKg) {
    throw InvalidArgument("KG retrieval has no trainable model");
  }
  std::vector<LabeledSequence> corpus;
  corpus.reserve(questions.size());
  for (const Question &q : questions) {
    corpus.push_back(MakeTrainingSequence(q, res));
  }
  CrfModel model = TrainCrf(corpus, DefaultTemplates(method != QedMethod::kCrf),
                            options, history);
  model.max_n = res.candidates.max_n;
  model.df_buckets = res.df_buckets;
  return model;
}

std::vector<Mention> Discover(std::u32string_view question, QedMethod method,
                              const CrfModel *model, const QedResources &res) {
  if (method == QedMethod::kKg) {
    return DiscoverKg(question, *res.store, res.candidates);
  }
  if (!model) throw InvalidArgument("CRF method needs a trained model");
  std::vector<Mention> crf = DiscoverCrf(question, *model, res);
  if (method != QedMethod::kIteration) return crf;
  return OneStepIteration(crf, DiscoverKg(question, *res.store, res.candidates),
                          *res.store);
}

}  // namespace qedl
