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

#include <gtest/gtest.h>

#include "qedl/errors.h"
#include "qedl/random.h"
#include "bioes_oracles.h"

namespace qedl {
namespace {

std::vector<Label> L(std::string_view s) { return ParseLabels(s); }

TEST(BioesEncodeTest, Examples) {
  std::vector<Span> one = {{0, 1}};
  EXPECT_EQ(LabelString(BioesEncode(5, one)), "SOOOO");
  std::vector<Span> mid = {{1, 4}};
  EXPECT_EQ(LabelString(BioesEncode(5, mid)), "OBIEO");
  std::vector<Span> two = {{0, 2}, {3, 6}};
  EXPECT_EQ(LabelString(BioesEncode(8, two)), "BEOBIEOO");
  EXPECT_EQ(LabelString(BioesEncode(3, {})), "OOO");
}

TEST(BioesEncodeTest, Errors) {
  std::vector<Span> overlap = {{0, 3}, {2, 4}};
  EXPECT_THROW(BioesEncode(5, overlap), InvalidArgument);
  std::vector<Span> outside = {{3, 6}};
  EXPECT_THROW(BioesEncode(5, outside), InvalidArgument);
  std::vector<Span> empty = {{2, 2}};
  EXPECT_THROW(BioesEncode(5, empty), InvalidArgument);
}

TEST(BioesDecodeTest, Examples) {
  EXPECT_EQ(BioesDecode(L("OBIEO")), (std::vector<Span>{{1, 4}}));
  EXPECT_TRUE(BioesDecode(L("IIO")).empty());
  EXPECT_TRUE(BioesDecode(L("BBBB")).empty());
  EXPECT_EQ(BioesDecode(L("BSE")), (std::vector<Span>{{1, 2}}));
  EXPECT_EQ(BioesDecode(L("BBIE")), (std::vector<Span>{{1, 4}}));
}

TEST(BioesDecodeTest, RoundTripRandomSpanSets) {
  Rng rng(3);
  for (int round = 0; round < 1000; ++round) {
    const int length = static_cast<int>(rng.UniformRange(1, 20));
    std::vector<Span> spans;
    int pos = 0;
    while (pos < length) {
      pos += static_cast<int>(rng.UniformInt(4));
      if (pos >= length) break;
      const int len = static_cast<int>(
          rng.UniformRange(1, std::min(4, length - pos)));
      spans.push_back({pos, pos + len});
      pos += len;
    }
    EXPECT_EQ(BioesDecode(BioesEncode(length, spans)), spans);
  }
}

TEST(BioesDecodeTest, MatchesReferenceOnAllLengthFourSequences) {
  const auto all = testing::AllLabelSequences(4);
  ASSERT_EQ(all.size(), 625u);
  for (const auto &labels : all) {
    const std::string s = LabelString(labels);
    EXPECT_EQ(BioesDecode(labels), testing::RegexDecode(s)) << s;
  }
}

TEST(LabelTest, Names) {
  EXPECT_EQ(LabelIndex(Label::kB), 0);
  EXPECT_EQ(LabelIndex(Label::kS), 4);
  EXPECT_EQ(LabelFromChar('E'), Label::kE);
  EXPECT_FALSE(LabelFromChar('X').has_value());
  EXPECT_THROW(ParseLabels("BX"), InvalidArgument);
}

}  // namespace
}  // namespace qedl
