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

#ifndef QEDL_TEXT_H_
#define QEDL_TEXT_H_

#include <string>
#include <string_view>

namespace qedl {

// Text is handled as UTF-8 at API boundaries and as sequences of Unicode
// scalar values internally. All character offsets in the library count
// scalar values, never bytes.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view text);

// Slice [start, end) of a decoded text, re-encoded as UTF-8.
std::string Slice(std::u32string_view text, int start, int end);

// Number of scalar values in a UTF-8 string.
int CodePointLength(std::string_view utf8);

// True for whitespace and for general category P* (punctuation).
bool IsSeparator(char32_t c);

// True for general category Nd.
bool IsDigit(char32_t c);

// Canonical form used for every surface-form comparison:
//   1. Unicode NFC.
//   2. Trim surrounding whitespace.
//   3. Collapse each run of whitespace/punctuation to a single '_'.
//   4. Case-fold letters of the Latin script.
// Normalize is idempotent.
std::string Normalize(std::string_view text);
std::string Normalize(std::u32string_view text);

}  // namespace qedl

#endif  // QEDL_TEXT_H_
