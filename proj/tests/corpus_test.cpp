/*
 * Copyright 2026 The essaycoh Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "essaycoh/corpus.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "essaycoh/random.hpp"

namespace essaycoh {
namespace {

using L = SlotLabel;

TEST(NormalizePunctTest, EmptyInput) { EXPECT_EQ(normalize_punct(std::string_view("")), ""); }

TEST(NormalizePunctTest, AlreadyNormalizedPassesThrough) {
  const std::string s = "有一次我上学要迟到了。闷着头硬闯红灯。";
  EXPECT_EQ(normalize_punct(s), s);
}

TEST(NormalizePunctTest, FoldsColonSemicolonQuestion) {
  EXPECT_EQ(normalize_punct(std::string_view("你好：世界；再见？")), "你好，世界。再见。");
}

TEST(NormalizePunctTest, FoldsAsciiMarks) {
  EXPECT_EQ(normalize_punct(std::string_view("a,b.c:d;e?f!")), "a，b。c，d。e。f。");
  EXPECT_EQ(normalize_punct(std::string_view("太好了！")), "太好了。");
}

TEST(NormalizePunctTest, DeletesOtherPunctuation) {
  EXPECT_EQ(normalize_punct(std::string_view("他说：“我来了……”（笑）、《书》—— 'x' \"y\"")),
            "他说，我来了笑书 x y");
}

TEST(NormalizePunctTest, KeepsSymbolsAndLetters) {
  EXPECT_EQ(normalize_punct(std::string_view("1+1=2 ～ abc")), "1+1=2 ～ abc");
}

TEST(NormalizePunctTest, Idempotent) {
  Rng rng(7);
  const std::u32string alphabet = U"我们春天，。：；？！,.:;?!“”（）、…—ab 1";
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string t;
    const auto len = uniform_index(rng, 20);
    for (std::size_t i = 0; i < len; ++i) t.push_back(alphabet[uniform_index(rng, alphabet.size())]);
    const std::u32string once = normalize_punct(std::u32string_view(t));
    EXPECT_EQ(normalize_punct(std::u32string_view(once)), once);
  }
}

TEST(SplitSentencesTest, Empty) { EXPECT_TRUE(split_sentences("").empty()); }

TEST(SplitSentencesTest, SplitsAfterPeriods) {
  EXPECT_EQ(split_sentences("有一次我上学要迟到了。闷着头硬闯红灯。"),
            (std::vector<std::string>{"有一次我上学要迟到了。", "闷着头硬闯红灯。"}));
}

TEST(SplitSentencesTest, TrailingSegmentWithoutPeriod) {
  EXPECT_EQ(split_sentences("春天来了，花开了。我们去郊游"),
            (std::vector<std::string>{"春天来了，花开了。", "我们去郊游"}));
}

TEST(SplitSentencesTest, WhitespaceTailIsNotASentence) {
  EXPECT_EQ(split_sentences("一。二。 \n"), (std::vector<std::string>{"一。", "二。 \n"}));
  EXPECT_TRUE(split_sentences("  \n").empty());
}

TEST(SplitSentencesTest, JoinRestoresInputAndNoEmptyElements) {
  Rng rng(11);
  const std::u32string alphabet = U"春天来，。 ";
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string t;
    const auto len = uniform_index(rng, 16);
    for (std::size_t i = 0; i < len; ++i) t.push_back(alphabet[uniform_index(rng, alphabet.size())]);
    const std::string text = utf8::encode(t);
    const auto sentences = split_sentences(text);
    std::string joined;
    for (const auto& s : sentences) {
      EXPECT_FALSE(s.empty());
      joined += s;
    }
    bool blank = true;
    for (char32_t c : t) blank = blank && utf8::is_space(c);
    if (!blank) EXPECT_EQ(joined, text);
  }
}

TEST(DeriveLabelsTest, WorkedExample) {
  const PunctLabelSeq seq = derive_labels("有一次我上学要迟到了。闷着头硬闯红灯。");
  EXPECT_EQ(utf8::encode(seq.base), "有一次我上学要迟到了闷着头硬闯红灯");
  ASSERT_EQ(seq.labels.size(), seq.base.size());
  for (std::size_t i = 0; i < seq.labels.size(); ++i) {
    const bool period_here = seq.base[i] == U'了' || seq.base[i] == U'灯';
    EXPECT_EQ(seq.labels[i], period_here ? L::kPeriod : L::kNone) << i;
  }
}

TEST(DeriveLabelsTest, NoPunctuation) {
  const PunctLabelSeq seq = derive_labels("abc");
  EXPECT_EQ(utf8::encode(seq.base), "abc");
  EXPECT_EQ(seq.labels, (std::vector<L>{L::kNone, L::kNone, L::kNone}));
}

TEST(DeriveLabelsTest, FirstMarkOfRunWins) {
  const PunctLabelSeq seq = derive_labels("a，。b");
  EXPECT_EQ(utf8::encode(seq.base), "ab");
  EXPECT_EQ(seq.labels, (std::vector<L>{L::kComma, L::kNone}));
}

TEST(DeriveLabelsTest, LeadingMarksDropped) {
  const PunctLabelSeq seq = derive_labels("。，ab。");
  EXPECT_EQ(utf8::encode(seq.base), "ab");
  EXPECT_EQ(seq.labels, (std::vector<L>{L::kNone, L::kPeriod}));
}

TEST(DeriveLabelsTest, RoundTripWithoutRunsOrLeadingMarks) {
  Rng rng(3);
  const std::u32string chars = U"春天来了花";
  for (int trial = 0; trial < 1000; ++trial) {
    std::u32string t;
    const auto len = uniform_index(rng, 12);
    for (std::size_t i = 0; i < len; ++i) {
      t.push_back(chars[uniform_index(rng, chars.size())]);
      const auto m = uniform_index(rng, 3);
      if (m == 1) t.push_back(kComma);
      if (m == 2) t.push_back(kPeriod);
    }
    const PunctLabelSeq seq = derive_labels(std::u32string_view(t));
    EXPECT_EQ(seq.labels.size(), seq.base.size());
    EXPECT_EQ(seq.render(), utf8::encode(t));
  }
}

TEST(DeriveLabelsTest, LengthPreservedForArbitraryInput) {
  Rng rng(5);
  const std::u32string chars = U"春，。a";
  for (int trial = 0; trial < 1000; ++trial) {
    std::u32string t;
    const auto len = uniform_index(rng, 12);
    for (std::size_t i = 0; i < len; ++i) t.push_back(chars[uniform_index(rng, chars.size())]);
    const PunctLabelSeq seq = derive_labels(std::u32string_view(t));
    EXPECT_EQ(seq.labels.size(), seq.base.size());
    for (char32_t c : seq.base) EXPECT_TRUE(c != kComma && c != kPeriod);
  }
}

TEST(EssayTest, SentencesRespectParagraphs) {
  Essay e{"e1", std::nullopt, {"春天来了。花开了", "我们去郊游！"}, std::nullopt};
  EXPECT_EQ(essay_sentences(e), (std::vector<std::string>{"春天来了。", "花开了", "我们去郊游。"}));
  EXPECT_EQ(essay_text(e), "春天来了。花开了我们去郊游！");
}

// Cases shared with the Python bridge: its stripping must reproduce these
// bases and labels byte for byte.
TEST(SharedFixtureTest, StrippingVectors) {
  std::ifstream in(std::string(ESSAYCOH_TEST_DATA) + "/strip_vectors.jsonl");
  ASSERT_TRUE(in) << "missing strip_vectors.jsonl";
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const PunctLabelSeq seq =
        derive_labels(std::u32string_view(normalize_punct(utf8::decode(j.at("text").get<std::string>()))));
    EXPECT_EQ(utf8::encode(seq.base), j.at("base").get<std::string>()) << line;
    std::vector<int> labels;
    for (L l : seq.labels) labels.push_back(static_cast<int>(l));
    EXPECT_EQ(labels, j.at("labels").get<std::vector<int>>()) << line;
    ++cases;
  }
  EXPECT_EQ(cases, 20);
}

}  // namespace
}  // namespace essaycoh
