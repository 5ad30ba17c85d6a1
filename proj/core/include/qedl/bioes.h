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

#ifndef QEDL_BIOES_H_
#define QEDL_BIOES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qedl/dataset.h"

namespace qedl {

// Label indices are fixed; Viterbi tie-breaking depends on this order.
enum class Label : uint8_t { kB = 0, kI = 1, kO = 2, kE = 3, kS = 4 };

inline constexpr int kNumLabels = 5;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kB, Label::kI, Label::kO, Label::kE, Label::kS};
inline constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "B", "I", "O", "E", "S"};

inline int LabelIndex(Label l) { return static_cast<int>(l); }
inline Label LabelAt(int i) { return static_cast<Label>(i); }
inline char LabelChar(Label l) { return kLabelNames[LabelIndex(l)][0]; }
std::optional<Label> LabelFromChar(char c);

// "OBIEO" <-> labels; handy in tests and logs.
std::string LabelString(std::span<const Label> labels);
std::vector<Label> ParseLabels(std::string_view text);

// Encodes non-overlapping spans of a sequence of `length` characters:
// single-character spans become S, longer spans B I* E, the rest O.
// Throws InvalidArgument on overlapping or out-of-range spans.
std::vector<Label> BioesEncode(int length, std::span<const Span> spans);

// Lenient decoding: each maximal well-formed "B I* E" or "S" segment is a
// span; fragments that never close (I without B, B without E, ...) are
// dropped.
std::vector<Span> BioesDecode(std::span<const Label> labels);

}  // namespace qedl

#endif  // QEDL_BIOES_H_
