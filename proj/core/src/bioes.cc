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

#include "qedl/bioes.h"

#include <algorithm>

#include "qedl/errors.h"

namespace qedl {

std::optional<Label> LabelFromChar(char c) {
  for (Label l : kAllLabels) {
    if (LabelChar(l) == c) return l;
  }
  return std::nullopt;
}

std::string LabelString(std::span<const Label> labels) {
  std::string out;
  out.reserve(labels.size());
  for (Label l : labels) out.push_back(LabelChar(l));
  return out;
}

std::vector<Label> ParseLabels(std::string_view text) {
  std::vector<Label> out;
  for (char c : text) {
    if (c == ' ') continue;
    auto l = LabelFromChar(c);
    if (!l) throw InvalidArgument(std::string("unknown label '") + c + "'");
    out.push_back(*l);
  }
  return out;
}

std::vector<Label> BioesEncode(int length, std::span<const Span> spans) {
  if (length < 0) throw InvalidArgument("negative sequence length");
  std::vector<Span> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    const Span &s = sorted[i];
    if (s.start < 0 || s.end > length || s.start >= s.end) {
      throw InvalidArgument("span [" + std::to_string(s.start) + "," +
                            std::to_string(s.end) + ") out of range");
    }
    if (i > 0 && sorted[i - 1].end > s.start) {
      throw InvalidArgument("overlapping spans at " + std::to_string(s.start));
    }
  }
  std::vector<Label> labels(length, Label::kO);
  for (const Span &s : sorted) {
    if (s.length() == 1) {
      labels[s.start] = Label::kS;
      continue;
    }
    labels[s.start] = Label::kB;
    for (int i = s.start + 1; i < s.end - 1; ++i) labels[i] = Label::kI;
    labels[s.end - 1] = Label::kE;
  }
  return labels;
}

std::vector<Span> BioesDecode(std::span<const Label> labels) {
  std::vector<Span> spans;
  int open = -1;  // start of the pending B, or -1
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    switch (labels[i]) {
      case Label::kB:
        open = i;
        break;
      case Label::kI:
        break;
      case Label::kE:
        if (open >= 0) spans.push_back({open, i + 1});
        open = -1;
        break;
      case Label::kS:
        spans.push_back({i, i + 1});
        open = -1;
        break;
      case Label::kO:
        open = -1;
        break;
    }
  }
  return spans;
}

}  // namespace qedl
