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

#include "qedl/text.h"

#include <gtest/gtest.h>

#include "qedl/errors.h"

namespace qedl {
namespace {

TEST(TextTest, DecodeCountsScalarValues) {
  EXPECT_EQ(DecodeUtf8("孕妇吃").size(), 3u);
  EXPECT_EQ(CodePointLength("a孕𝄞"), 3);
  EXPECT_EQ(EncodeUtf8(DecodeUtf8("a孕𝄞")), "a孕𝄞");
}

TEST(TextTest, DecodeRejectsInvalidUtf8) {
  EXPECT_THROW(DecodeUtf8("\xff"), InvalidArgument);
  EXPECT_THROW(DecodeUtf8("\xe5\xad"), InvalidArgument);   // truncated
  EXPECT_THROW(DecodeUtf8("\xc0\x80"), InvalidArgument);   // overlong
  EXPECT_THROW(DecodeUtf8("\xed\xa0\x80"), InvalidArgument);  // surrogate
}

TEST(TextTest, SliceUsesCharacterOffsets) {
  std::u32string t = DecodeUtf8("孕妇吃方便面好吗");
  EXPECT_EQ(Slice(t, 3, 6), "方便面");
  EXPECT_EQ(Slice(t, 0, 0), "");
}

TEST(TextTest, SeparatorsAndDigits) {
  EXPECT_TRUE(IsSeparator(U' '));
  EXPECT_TRUE(IsSeparator(U'?'));
  EXPECT_TRUE(IsSeparator(U'，'));
  EXPECT_TRUE(IsSeparator(U'　'));
  EXPECT_FALSE(IsSeparator(U'孕'));
  EXPECT_TRUE(IsDigit(U'7'));
  EXPECT_TRUE(IsDigit(U'٣'));
  EXPECT_FALSE(IsDigit(U'七'));
}

TEST(NormalizeTest, TrimsAndCollapses) {
  EXPECT_EQ(Normalize("  方便面 "), "方便面");
  EXPECT_EQ(Normalize("a  b"), "a_b");
  EXPECT_EQ(Normalize("a, ?b"), "a_b");
  EXPECT_EQ(Normalize("孕妇吃方便面好吗?"), "孕妇吃方便面好吗_");
  EXPECT_EQ(Normalize(""), "");
  EXPECT_EQ(Normalize("   "), "");
}

TEST(NormalizeTest, FoldsLatinOnly) {
  EXPECT_EQ(Normalize("iPhone X"), "iphone_x");
  EXPECT_EQ(Normalize("ÀB"), "àb");
  // Greek is not Latin script and keeps its case.
  EXPECT_EQ(Normalize("ΑΒ"), "ΑΒ");
}

TEST(NormalizeTest, AppliesNfc) {
  // e + combining acute composes to é.
  EXPECT_EQ(Normalize("é"), "é");
}

TEST(NormalizeTest, Idempotent) {
  for (const char *s : {"  A b,,C ", "孕妇 吃?", "éX", "_a_"}) {
    std::string once = Normalize(s);
    EXPECT_EQ(Normalize(once), once) << s;
  }
}

}  // namespace
}  // namespace qedl
