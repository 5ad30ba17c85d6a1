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

#ifndef QEDL_TESTS_BIOES_ORACLES_H_
#define QEDL_TESTS_BIOES_ORACLES_H_

#include <regex>
#include <string>
#include <vector>

#include "qedl/bioes.h"
#include "qedl/dataset.h"

namespace qedl::testing {

// Reference decoder: leftmost non-overlapping matches of S|BI*E.
inline std::vector<Span> RegexDecode(const std::string &s) {
  static const std::regex segment("S|BI*E");
  std::vector<Span> out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), segment);
       it != std::sregex_iterator(); ++it) {
    const int start = static_cast<int>(it->position());
    out.push_back({start, start + static_cast<int>(it->length())});
  }
  return out;
}

// All 5^length label sequences.
inline std::vector<std::vector<Label>> AllLabelSequences(int length) {
  std::vector<std::vector<Label>> out;
  int total = 1;
  for (int k = 0; k < length; ++k) total *= kNumLabels;
  for (int code = 0; code < total; ++code) {
    std::vector<Label> labels;
    for (int k = 0, c = code; k < length; ++k, c /= kNumLabels) {
      labels.push_back(LabelAt(c % kNumLabels));
    }
    out.push_back(std::move(labels));
  }
  return out;
}

}  // namespace qedl::testing

#endif  // QEDL_TESTS_BIOES_ORACLES_H_
