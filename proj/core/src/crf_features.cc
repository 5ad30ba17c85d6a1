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

#include "qedl/crf_features.h"

#include <algorithm>
#include <cmath>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

namespace {

constexpr char32_t kBeforeText = U'\u0002';
constexpr char32_t kAfterText = U'\u0003';

std::string NgramTemplateId(const NgramTemplate &t) {
  return "c" + std::to_string(t.length) + ":" + std::to_string(t.offset);
}

}  // namespace

std::vector<std::string> TemplatesFor(const std::vector<FeatureGroup> &groups) {
  std::vector<std::string> out;
  for (FeatureGroup g : groups) {
    switch (g) {
      case FeatureGroup::kCharacter:
        for (const auto &t : kNgramTemplates) out.push_back(NgramTemplateId(t));
        break;
      case FeatureGroup::kWordBoundary:
        out.push_back("wb");
        break;
      case FeatureGroup::kPos:
        out.push_back("pos");
        break;
      case FeatureGroup::kStopword:
        out.push_back("sw");
        break;
      case FeatureGroup::kDf:
        out.push_back("df");
        break;
      case FeatureGroup::kKg:
        out.push_back(std::string(kKgTemplate));
        break;
    }
  }
  return out;
}

std::vector<std::string> DefaultTemplates(bool with_kg) {
  std::vector<FeatureGroup> groups = {
      FeatureGroup::kCharacter, FeatureGroup::kWordBoundary,
      FeatureGroup::kPos, FeatureGroup::kStopword, FeatureGroup::kDf};
  if (with_kg) groups.push_back(FeatureGroup::kKg);
  return TemplatesFor(groups);
}

int DfBucket(int df, int buckets) {
  if (buckets < 1) throw InvalidArgument("df_buckets must be >= 1");
  int bucket = static_cast<int>(std::floor(std::log2(df + 1.0)));
  return std::clamp(bucket, 0, buckets - 1);
}

std::vector<Span> ResolveKgSpans(const std::vector<CandidateSpan> &kg_spans) {
  std::vector<Span> by_priority;
  by_priority.reserve(kg_spans.size());
  for (const auto &c : kg_spans) by_priority.push_back({c.start, c.end});
  std::stable_sort(by_priority.begin(), by_priority.end(),
                   [](const Span &a, const Span &b) {
                     if (a.length() != b.length()) {
                       return a.length() > b.length();
                     }
                     return a.start < b.start;
                   });
  std::vector<Span> chosen;
  for (const Span &s : by_priority) {
    bool clash = std::any_of(chosen.begin(), chosen.end(),
                             [&](const Span &c) { return c.Overlaps(s); });
    if (!clash) chosen.push_back(s);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<CharObservation> ExtractFeatures(
    std::u32string_view text, const std::vector<Token> &tokens,
    const std::vector<CandidateSpan> &kg_spans, const DocumentFrequencies &df,
    const std::unordered_set<std::string> &stopwords, int df_buckets) {
  const int length = static_cast<int>(text.size());
  std::vector<CharObservation> obs(length);

  for (int i = 0; i < length; ++i) {
    obs[i].ch = text[i];
    for (size_t t = 0; t < kNgramTemplates.size(); ++t) {
      std::u32string gram;
      const int begin = i + kNgramTemplates[t].offset;
      for (int k = begin; k < begin + kNgramTemplates[t].length; ++k) {
        gram.push_back(k < 0 ? kBeforeText
                             : (k >= length ? kAfterText : text[k]));
      }
      obs[i].char_ngrams[t] = EncodeUtf8(gram);
    }
  }

  for (const Token &tok : tokens) {
    if (tok.start < 0 || tok.end > length || tok.start >= tok.end) {
      throw InvalidArgument("token outside the question text");
    }
    const std::string key = Normalize(tok.surface);
    const bool stop = stopwords.contains(key);
    const int bucket = DfBucket(df.Df(key), df_buckets);
    for (int i = tok.start; i < tok.end; ++i) {
      CharObservation &o = obs[i];
      if (tok.end - tok.start == 1) {
        o.word_boundary = 'S';
      } else if (i == tok.start) {
        o.word_boundary = 'B';
      } else if (i == tok.end - 1) {
        o.word_boundary = 'E';
      } else {
        o.word_boundary = 'I';
      }
      o.pos = tok.pos;
      o.is_stopword = stop;
      o.df_bucket = bucket;
    }
  }

  std::vector<Span> kg = ResolveKgSpans(kg_spans);
  std::vector<Label> tags = BioesEncode(length, kg);
  for (int i = 0; i < length; ++i) obs[i].kg_tag = tags[i];
  return obs;
}

std::vector<std::string> FeatureKeys(const CharObservation &obs,
                                     const std::vector<std::string> &templates) {
  std::vector<std::string> keys;
  keys.reserve(templates.size());
  for (const std::string &t : templates) {
    std::string value;
    if (t.size() > 1 && t[0] == 'c' && t[1] >= '1' && t[1] <= '4') {
      auto it = std::find_if(
          kNgramTemplates.begin(), kNgramTemplates.end(),
          [&](const NgramTemplate &g) { return NgramTemplateId(g) == t; });
      if (it == kNgramTemplates.end()) {
        throw InvalidArgument("unknown feature template '" + t + "'");
      }
      value = obs.char_ngrams[it - kNgramTemplates.begin()];
    } else if (t == "wb") {
      value = std::string(1, obs.word_boundary);
    } else if (t == "pos") {
      value = obs.pos;
    } else if (t == "sw") {
      value = obs.is_stopword ? "1" : "0";
    } else if (t == "df") {
      value = std::to_string(obs.df_bucket);
    } else if (t == kKgTemplate) {
      value = std::string(1, LabelChar(obs.kg_tag));
    } else {
      throw InvalidArgument("unknown feature template '" + t + "'");
    }
    keys.push_back(t + "=" + value);
  }
  return keys;
}

}  // namespace qedl
