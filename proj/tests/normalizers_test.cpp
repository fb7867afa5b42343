// Copyright (c) 2026 The pstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pstab/pstab.hpp"
#include "test_support.hpp"

namespace pstab {
namespace {

using testing::MakeStream;
using testing::WorkedExampleStream;

TEST(LowercaseTest, WorkedExampleCapitalizationRowDisappears) {
  const auto folded = LowercaseStream(WorkedExampleStream());
  const auto u = ComputeUtteranceStability(folded);
  // Oracle: the same transition computed directly on folded text.
  const auto d = SegmentDiff(Segment(0, "here, lived a man who", false),
                             Segment(0, "here, lived a man who sell", false));
  EXPECT_EQ(d.unstable_words, 0u);
  EXPECT_EQ(u.per_transition[4].unstable_words, d.unstable_words);
  EXPECT_FALSE(u.per_transition[4].is_revision);
  EXPECT_EQ(u.unstable_word_total, 7u);
  EXPECT_EQ(u.unstable_segment_total, 4u);
}

TEST(LowercaseTest, AllLowercaseIsIdentity) {
  const auto s = MakeStream("u", {"a", "a b", "a c", "a c d."});
  EXPECT_EQ(LowercaseStream(s), s);
}

TEST(LowercaseTest, CollapseKeepsEarlierTimestamp) {
  const auto s = MakeStream("u", {"A", "a", "a b"}, 100);
  const auto folded = LowercaseStream(s);
  ASSERT_EQ(folded.segments().size(), 2u);
  EXPECT_EQ(folded.segments()[0], Segment(100, "a", false));
  EXPECT_EQ(folded.segments()[1], Segment(300, "a b", true));
  EXPECT_EQ(ComputeUtteranceStability(folded).unstable_segment_total, 0u);
  EXPECT_EQ(ComputeUtteranceStability(s).unstable_segment_total, 1u);
}

TEST(LowercaseTest, FinalIsKeptEvenWhenEqualToPrevious) {
  const auto s = MakeStream("u", {"A b", "a B"}, 100);
  const auto folded = LowercaseStream(s);
  ASSERT_EQ(folded.segments().size(), 2u);
  EXPECT_TRUE(folded.segments()[1].is_final());
}

TEST(LowercaseTest, FoldsNonAscii) {
  const auto s = MakeStream("u", {"ÉCOLE Ωmega"});
  EXPECT_EQ(LowercaseStream(s).final_segment().raw(), "école ωmega");
}

class LowercaseProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LowercaseProperties, IdempotentNoCapitalizationNoIncrease) {
  GenConfig cfg;
  cfg.seed = GetParam();
  cfg.p_capitalization = 0.5;
  const auto g = GenerateCorpus(testing::CycledTranscripts(40), cfg);
  const InstabilityClassifier classifier;
  for (const auto& s : g.corpus.streams()) {
    const auto once = LowercaseStream(s);
    EXPECT_EQ(LowercaseStream(once), once);
    for (const auto& ev : ExtractEvents(once, classifier)) {
      EXPECT_NE(ev.kind, InstabilityType::kCapitalization);
    }
    const auto before = ComputeUtteranceStability(s);
    const auto after = ComputeUtteranceStability(once);
    EXPECT_LE(after.unstable_word_total, before.unstable_word_total);
    EXPECT_LE(after.unstable_segment_total, before.unstable_segment_total);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LowercaseProperties, ::testing::Values(1, 2, 3));

TEST(BracketTest, DocumentedExamples) {
  const BracketTokenTable table;
  EXPECT_EQ(ConvertBracketTokens("Hello {exclamation-mark}", table).text, "Hello!");
  EXPECT_EQ(ConvertBracketTokens("no brackets here", table).text, "no brackets here");
  EXPECT_EQ(ConvertBracketTokens("Wait {period} Go", table).text, "Wait. Go");
}

TEST(BracketTest, RightAttachingSymbols) {
  const BracketTokenTable table;
  EXPECT_EQ(ConvertBracketTokens("say {left-parenthesis} aside {right-parenthesis} ok",
                                 table)
                .text,
            "say (aside) ok");
  EXPECT_EQ(ConvertBracketTokens("{left-quotation-mark} hi {right-quotation-mark}",
                                 table)
                .text,
            "“hi”");
  EXPECT_EQ(ConvertBracketTokens("end {left-bracket}", table).text, "end [");
}

TEST(BracketTest, UnknownKeysWarnAndPassThrough) {
  const auto r = ConvertBracketTokens("a {pilcrow} b {comma}", BracketTokenTable());
  EXPECT_EQ(r.text, "a {pilcrow} b,");
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("{pilcrow}"), std::string::npos);
}

TEST(BracketTest, OnlyWholeChunksAreConverted) {
  const auto r = ConvertBracketTokens("x{comma} y", BracketTokenTable());
  EXPECT_EQ(r.text, "x{comma} y");
}

TEST(BracketTest, IdempotentAndKeyFree) {
  const BracketTokenTable table;
  std::mt19937_64 rng(21);
  std::vector<std::string> vocab = {"word", "Go", "{pilcrow}", "  ", "\t"};
  for (const auto& e : table.entries()) vocab.push_back(e.key);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    const auto n = rng() % 8;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) s.push_back(' ');
      s += vocab[rng() % vocab.size()];
    }
    const auto once = ConvertBracketTokens(s, table).text;
    EXPECT_EQ(ConvertBracketTokens(once, table).text, once) << s;
    std::string_view trailing;
    for (const auto& c : detail::SplitChunks(once, &trailing)) {
      EXPECT_EQ(table.FindKey(c.text), nullptr) << s << " -> " << once;
    }
  }
}

TEST(BracketTableTest, LoadValidates) {
  std::istringstream good("# comment\n{comma}\t,\tL\n{dash}\t-\tL\n");
  const auto t = BracketTokenTable::Load(good);
  EXPECT_EQ(t.entries().size(), 2u);
  EXPECT_EQ(t.FindSymbol("-")->key, "{dash}");

  for (const char* bad : {"{Comma}\t,\tL\n", "{comma}\tx\tL\n", "{comma}\t,\tX\n",
                          "{comma}\t,\tL\n{comma}\t.\tL\n",
                          "{comma}\t,\tL\n{period}\t,\tL\n", "comma\t,\tL\n"}) {
    std::istringstream in(bad);
    try {
      BracketTokenTable::Load(in);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedTable);
    }
  }
}

TEST(AnnotateTest, DocumentedExamples) {
  const SpokenPunctuationLexicon lex;
  EXPECT_EQ(AnnotateSpokenPunctuation("hello comma world", lex),
            "hello {comma} world");
  EXPECT_EQ(AnnotateSpokenPunctuation("", lex), "");
  EXPECT_EQ(AnnotateSpokenPunctuation("left quotation mark stop", lex),
            "{left-quotation-mark} stop");
  EXPECT_EQ(AnnotateSpokenPunctuation("quotation mark stop", lex),
            "{quotation-mark} stop");
}

TEST(AnnotateTest, CaseInsensitiveAndPreservesSpacing) {
  const SpokenPunctuationLexicon lex;
  EXPECT_EQ(AnnotateSpokenPunctuation("Wow  Exclamation Mark ", lex),
            "Wow  {exclamation-mark} ");
  EXPECT_EQ(AnnotateSpokenPunctuation("a left b", lex), "a left b");
}

TEST(AnnotateTest, ComposesToSpokenToSymbol) {
  const Lexicons lx;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"hello comma world", "hello, world"},
      {"wait period go", "wait. go"},
      {"really question mark", "really?"},
      {"he said left quotation mark hi right quotation mark", "he said “hi”"},
      {"call me left parenthesis maybe right parenthesis", "call me (maybe)"},
      {"nothing to see", "nothing to see"},
  };
  for (const auto& [spoken, written] : cases) {
    const auto annotated = AnnotateSpokenPunctuation(spoken, lx.spoken_punctuation);
    const auto r = ConvertBracketTokens(annotated, lx.brackets);
    EXPECT_EQ(r.text, written) << spoken;
    EXPECT_TRUE(r.warnings.empty()) << spoken;
  }
}

TEST(AnnotateTest, EveryTableKeyIsReachableFromItsPhrase) {
  const Lexicons lx;
  for (const auto& e : lx.brackets.entries()) {
    const auto phrase = BracketKeyToPhrase(e.key);
    EXPECT_EQ(AnnotateSpokenPunctuation(phrase, lx.spoken_punctuation), e.key);
  }
}

}  // namespace
}  // namespace pstab
