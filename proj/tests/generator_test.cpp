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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pstab/pstab.hpp"
#include "test_support.hpp"

namespace pstab {
namespace {

using T = InstabilityType;

std::vector<std::string> Words(std::initializer_list<const char*> w) {
  return {w.begin(), w.end()};
}

TEST(SpokenNumberTest, Integers) {
  EXPECT_EQ(SpokenNumber("0"), Words({"zero"}));
  EXPECT_EQ(SpokenNumber("800"), Words({"eight", "hundred"}));
  EXPECT_EQ(SpokenNumber("34"), Words({"thirty", "four"}));
  EXPECT_EQ(SpokenNumber("1,234"),
            Words({"one", "thousand", "two", "hundred", "thirty", "four"}));
  EXPECT_EQ(SpokenNumber("999999"),
            Words({"nine", "hundred", "ninety", "nine", "thousand", "nine",
                   "hundred", "ninety", "nine"}));
  EXPECT_EQ(SpokenNumber("20000"), Words({"twenty", "thousand"}));
}

TEST(SpokenNumberTest, DigitStrings) {
  EXPECT_EQ(SpokenNumber("800-12"), Words({"eight", "zero", "zero", "one", "two"}));
  EXPECT_EQ(SpokenNumber("007"), Words({"zero", "zero", "seven"}));
  EXPECT_EQ(SpokenNumber("1234567"),
            Words({"one", "two", "three", "four", "five", "six", "seven"}));
  EXPECT_EQ(SpokenNumber("3.14"), Words({"three", "point", "one", "four"}));
}

TEST(SpokenNumberTest, Rejects) {
  for (const char* s : {"", "abc", "12a", "1,23", "1.2.3", "-5", "5-", "1,234.5", "$5"}) {
    EXPECT_FALSE(SpokenNumber(s).has_value()) << s;
  }
}

TEST(SpokenNumberTest, WordsAreNumberWords) {
  const NumberLexicon lex;
  for (int n = 0; n < 1000000; n += 997) {
    const auto w = SpokenNumber(std::to_string(n));
    ASSERT_TRUE(w.has_value());
    for (const auto& x : *w) EXPECT_TRUE(lex.Contains(x)) << n << " " << x;
  }
}

TEST(GenerateUtteranceTest, NoRevisionsGivesPureGrowth) {
  const auto cfg = GenConfig::NoRevisions(3);
  const auto g = GenerateCorpus(testing::CycledTranscripts(50), cfg);
  const auto stats = ComputeCorpusStability(g.corpus);
  EXPECT_EQ(stats.upwr, 0.0);
  EXPECT_EQ(stats.upsr, 0.0);
  for (const auto& t : g.truth) EXPECT_TRUE(t.empty());
}

TEST(GenerateUtteranceTest, DeterministicGivenSeed) {
  GenConfig cfg;
  cfg.seed = 99;
  const auto a = GenerateCorpus(testing::CycledTranscripts(30), cfg);
  const auto b = GenerateCorpus(testing::CycledTranscripts(30), cfg);
  EXPECT_EQ(SerializeCorpus(a.corpus), SerializeCorpus(b.corpus));
  EXPECT_EQ(a.truth, b.truth);
  cfg.seed = 100;
  const auto c = GenerateCorpus(testing::CycledTranscripts(30), cfg);
  EXPECT_NE(SerializeCorpus(a.corpus), SerializeCorpus(c.corpus));
}

TEST(GenerateUtteranceTest, NumeralPrecursor) {
  auto cfg = GenConfig::NoRevisions(1);
  cfg.p_numeral = 1.0;
  const auto ls = GenerateUtterance("Call 800", cfg);
  EXPECT_EQ(ls.stream.final_segment().raw(), "Call 800");
  bool spoken_before = false;
  for (const auto& seg : ls.stream.segments()) {
    if (seg.raw() == "Call 800") break;
    const auto& r = seg.raw();
    const std::string tail = "eight hundred";
    if (r.size() >= tail.size() && r.compare(r.size() - tail.size(), tail.size(), tail) == 0) {
      spoken_before = true;
    }
  }
  EXPECT_TRUE(spoken_before);
  ASSERT_EQ(ls.truth_events.size(), 1u);
  EXPECT_EQ(ls.truth_events[0].kind, T::kNumeral);
  const auto events = ExtractEvents(ls.stream, InstabilityClassifier());
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, T::kNumeral);
  EXPECT_EQ(events[0].transition_index, ls.truth_events[0].transition_index);
}

TEST(GenerateUtteranceTest, CapitalizationOnly) {
  auto cfg = GenConfig::NoRevisions(2);
  cfg.p_capitalization = 1.0;
  const auto ls = GenerateUtterance("the quick brown fox", cfg);
  ASSERT_EQ(ls.truth_events.size(), 4u);
  for (const auto& e : ls.truth_events) EXPECT_EQ(e.kind, T::kCapitalization);
}

TEST(GenerateUtteranceTest, ConfusionTable) {
  auto cfg = GenConfig::NoRevisions(2);
  cfg.p_streaming_precursor = 1.0;
  cfg.confusion_table = {{"sailed", "sell"}};
  const auto ls = GenerateUtterance("he sailed", cfg);
  bool saw = false;
  for (const auto& seg : ls.stream.segments()) saw |= seg.raw() == "he sell";
  EXPECT_TRUE(saw);
}

TEST(GenerateUtteranceTest, EmptyTranscript) {
  try {
    GenerateUtterance("   ", GenConfig());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyTranscript);
  }
  EXPECT_THROW(GenerateCorpus({}, GenConfig()), Error);
}

TEST(GenConfigTest, Validate) {
  GenConfig c;
  c.p_spacing = 1.5;
  EXPECT_THROW(c.Validate(), Error);
  c = GenConfig();
  c.raw_pei_ms = 0;
  EXPECT_THROW(c.Validate(), Error);
  c = GenConfig();
  c.word_duration_jitter_ms = c.word_duration_ms;
  EXPECT_THROW(c.Validate(), Error);
}

class GeneratorProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(GeneratorProperties, TruthMatchesStream) {
  GenConfig cfg;
  cfg.seed = GetParam();
  const auto transcripts = testing::CycledTranscripts(100);
  const auto g = GenerateCorpus(transcripts, cfg);
  ASSERT_EQ(g.corpus.size(), transcripts.size());
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    const auto& s = g.corpus.streams()[i];
    EXPECT_EQ(s.utterance_id(), UtteranceId(i));
    EXPECT_EQ(s.final_segment().raw(), transcripts[i]);
    const auto u = ComputeUtteranceStability(s);
    EXPECT_EQ(g.truth[i].size(), u.unstable_segment_total) << s.utterance_id();
    for (const auto& ev : g.truth[i]) {
      ASSERT_LT(ev.transition_index, u.per_transition.size());
      EXPECT_TRUE(u.per_transition[ev.transition_index].is_revision);
    }
    for (std::size_t k = 1; k < s.segments().size(); ++k) {
      EXPECT_LT(s.segments()[k - 1].t_ms(), s.segments()[k].t_ms());
      EXPECT_EQ(s.segments()[k].t_ms() % cfg.raw_pei_ms, 0);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GeneratorProperties, ::testing::Values(1, 42, 777));

TEST(UtteranceSeedTest, DistinctAcrossIndices) {
  EXPECT_NE(UtteranceSeed(42, 0), UtteranceSeed(42, 1));
  EXPECT_NE(UtteranceSeed(42, 0), UtteranceSeed(43, 0));
  EXPECT_EQ(UtteranceId(0), "utt00001");
}

}  // namespace
}  // namespace pstab
