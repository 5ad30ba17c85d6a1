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

#include "qedl/segmentation.h"

#include <algorithm>

#include "qedl/errors.h"
#include "qedl/text.h"

namespace qedl {

std::vector<Token> SegmentFmm(std::u32string_view text, const KgStore &store) {
  std::vector<Token> tokens;
  const int length = static_cast<int>(text.size());
  const int max_window = store.max_lexicon_length();
  int pos = 0;
  while (pos < length) {
    int matched = 0;
    std::string tag;
    if (!IsSeparator(text[pos])) {
      for (int w = std::min(max_window, length - pos); w >= 1; --w) {
        if (IsSeparator(text[pos + w - 1])) continue;
        auto found = store.LexiconPos(Normalize(text.substr(pos, w)));
        if (found) {
          matched = w;
          tag = found->empty() ? kUnknownPos : *found;
          break;
        }
      }
    }
    if (matched == 0) {
      matched = 1;
      tag = kUnknownPos;
    }
    tokens.push_back(
        {EncodeUtf8(text.substr(pos, matched)), pos, pos + matched, tag});
    pos += matched;
  }
  return tokens;
}

bool IsContentPos(std::string_view pos, const CandidateOptions &options) {
  for (const auto &prefix : options.content_pos_prefixes) {
    if (!prefix.empty() && pos.starts_with(prefix)) return true;
  }
  return false;
}

std::vector<CandidateSpan> GenerateCandidates(
    std::u32string_view text, const std::vector<Token> &tokens,
    const KgStore &store, const CandidateOptions &options) {
  if (options.max_n < 1) throw InvalidArgument("max_n must be >= 1");
  std::vector<CandidateSpan> out;
  const int count = static_cast<int>(tokens.size());
  for (int first = 0; first < count; ++first) {
    bool has_content = false;
    bool has_digit = false;
    for (int last = first; last < count && last - first < options.max_n;
         ++last) {
      const Token &tok = tokens[last];
      has_content = has_content || IsContentPos(tok.pos, options);
      for (int i = tok.start; i < tok.end && !has_digit; ++i) {
        has_digit = IsDigit(text[i]);
      }
      const int start = tokens[first].start;
      const int end = tok.end;
      // (b) single-character 1-grams.
      if (first == last && end - start == 1) continue;
      // (c) no noun, verb or number.
      if (!has_content && !has_digit) continue;
      // (a) + (d) normalized surface must match a KG entry.
      std::u32string_view slice = text.substr(start, end - start);
      if (store.LookupNormalized(Normalize(slice)).empty()) continue;
      out.push_back({start, end, EncodeUtf8(slice), first, last});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  return out;
}

}  // namespace qedl
