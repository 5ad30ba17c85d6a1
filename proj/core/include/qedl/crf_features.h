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

#ifndef QEDL_CRF_FEATURES_H_
#define QEDL_CRF_FEATURES_H_

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qedl/bioes.h"
#include "qedl/corpus.h"
#include "qedl/segmentation.h"

namespace qedl {

inline constexpr int kDefaultDfBuckets = 8;

// Character n-gram templates: every gram of length N (1..4) that covers
// position i, identified by its start offset relative to i. Grams that run
// past either end are padded with U+0002 (before) / U+0003 (after).
struct NgramTemplate {
  int length;
  int offset;
};
inline constexpr std::array<NgramTemplate, 10> kNgramTemplates = {{
    {1, 0},
    {2, -1}, {2, 0},
    {3, -2}, {3, -1}, {3, 0},
    {4, -3}, {4, -2}, {4, -1}, {4, 0},
}};

// Per-character observation columns.
struct CharObservation {
  char32_t ch = 0;
  std::array<std::string, kNgramTemplates.size()> char_ngrams;
  char word_boundary = 'S';  // B, I, E or S within the containing token
  std::string pos;
  bool is_stopword = false;
  int df_bucket = 0;
  Label kg_tag = Label::kO;
};

// Template groups, in cumulative ablation order.
enum class FeatureGroup { kCharacter, kWordBoundary, kPos, kStopword, kDf, kKg };

// Template identifiers, e.g. "c2:-1", "wb", "pos", "sw", "df", "kg".
std::vector<std::string> TemplatesFor(const std::vector<FeatureGroup> &groups);

// All Table-1 columns, plus the KG-tag column when `with_kg`.
std::vector<std::string> DefaultTemplates(bool with_kg);

inline constexpr std::string_view kKgTemplate = "kg";

// min(buckets - 1, floor(log2(df + 1)))
int DfBucket(int df, int buckets = kDefaultDfBuckets);

// Picks non-overlapping KG spans for the kg_tag column: longer spans win,
// then earlier starts.
std::vector<Span> ResolveKgSpans(const std::vector<CandidateSpan> &kg_spans);

// One observation per character of `text`. `tokens` must segment the text.
std::vector<CharObservation> ExtractFeatures(
    std::u32string_view text, const std::vector<Token> &tokens,
    const std::vector<CandidateSpan> &kg_spans, const DocumentFrequencies &df,
    const std::unordered_set<std::string> &stopwords,
    int df_buckets = kDefaultDfBuckets);

// "template=value" strings of one observation for the given templates.
std::vector<std::string> FeatureKeys(const CharObservation &obs,
                                     const std::vector<std::string> &templates);

}  // namespace qedl

#endif  // QEDL_CRF_FEATURES_H_
