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

#ifndef QEDL_SEGMENTATION_H_
#define QEDL_SEGMENTATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "qedl/kg_store.h"

namespace qedl {

inline constexpr char kUnknownPos[] = "UNK";

struct Token {
  std::string surface;
  int start = 0;
  int end = 0;
  std::string pos;
};

// A token n-gram that survived the KG-retrieval filters.
struct CandidateSpan {
  int start = 0;
  int end = 0;
  std::string surface;
  int first_token = 0;
  int last_token = 0;
};

struct CandidateOptions {
  // Longest token n-gram considered.
  int max_n = 4;
  // POS tags starting with one of these count as noun/verb content.
  std::vector<std::string> content_pos_prefixes = {"n", "v"};
};

// Forward maximum matching against the store's lexicon. At each position
// the longest window whose normalized form is a lexicon entry becomes a
// token; a window never starts or ends on a separator character. Positions
// with no match become single-character tokens tagged "UNK". The tokens
// partition the text.
std::vector<Token> SegmentFmm(std::u32string_view text, const KgStore &store);

// KG-retrieval candidate generation over token n-grams, n <= max_n:
//   a. the n-gram surface is normalized (separator runs become '_');
//   b. 1-grams of a single character are dropped;
//   c. n-grams with no noun/verb token and no digit are dropped;
//   d. only n-grams whose normalized surface is in the KG survive.
// Output is ordered by (start, end).
std::vector<CandidateSpan> GenerateCandidates(
    std::u32string_view text, const std::vector<Token> &tokens,
    const KgStore &store, const CandidateOptions &options = {});

// True if the POS tag starts with one of the content prefixes.
bool IsContentPos(std::string_view pos, const CandidateOptions &options);

}  // namespace qedl

#endif  // QEDL_SEGMENTATION_H_
