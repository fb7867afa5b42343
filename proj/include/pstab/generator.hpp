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

// Seeded generator of synthetic partial streams with known revisions.
//
// Words of the transcript are "spoken" back to back with jittered durations.
// Each token may receive one precursor, shown before the true form:
//
//   Numeral         "800"   shown first as "eight hundred"
//   Punctuation     ","     shown first as the dictated word "comma"
//   Spacing         ","     shown first detached ("Hi ," before "Hi,")
//   Capitalization  "Lived" shown first as "lived" (first letter toggled)
//   Streaming       "opinion" shown first as a prefix ("opi") or as the
//                   confusion-table entry for the word
//
// Every step of the schedule (append a token, or resolve one precursor) is
// emitted as its own segment on the raw emission clock, so each precursor
// resolution is exactly one revised segment and is recorded as a truth event.
//
// Randomness: std::mt19937_64 (fully specified by the C++ standard) with
// hand-rolled integer/real conversions. Corpus sub-seeds are
// SplitMix64(seed + 0x9E3779B97F4A7C15 * (utterance_index + 1)).

#ifndef PSTAB_GENERATOR_HPP_
#define PSTAB_GENERATOR_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pstab/classifier.hpp"
#include "pstab/error.hpp"
#include "pstab/lexicon.hpp"
#include "pstab/logistic.hpp"
#include "pstab/spoken_numbers.hpp"
#include "pstab/stream.hpp"
#include "pstab/unicode.hpp"

namespace pstab {

struct GenConfig {
  std::int64_t raw_pei_ms = 50;
  std::int64_t word_duration_ms = 300;
  std::int64_t word_duration_jitter_ms = 100;
  double p_capitalization = 0.1;
  double p_numeral = 0.6;
  double p_punctuation_spoken_path = 0.5;
  double p_streaming_precursor = 0.3;
  double p_spacing = 0.2;
  /// word -> precursor shown before it (e.g. "sailed" -> "sell").
  std::map<std::string, std::string> confusion_table;
  std::uint64_t seed = 0;

  void Validate() const {
    if (raw_pei_ms < 1) {
      throw Error(ErrorCode::kInvalidArgument, "raw_pei_ms must be >= 1");
    }
    if (word_duration_ms < 1 || word_duration_jitter_ms < 0 ||
        word_duration_jitter_ms >= word_duration_ms) {
      throw Error(ErrorCode::kInvalidArgument,
                  "need word_duration_ms >= 1 and 0 <= jitter < duration");
    }
    for (double p : {p_capitalization, p_numeral, p_punctuation_spoken_path,
                     p_streaming_precursor, p_spacing}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "probabilities must lie in [0, 1]");
      }
    }
  }

  /// Config with every injection probability set to zero.
  static GenConfig NoRevisions(std::uint64_t seed = 0) {
    GenConfig c;
    c.p_capitalization = c.p_numeral = c.p_punctuation_spoken_path =
        c.p_streaming_precursor = c.p_spacing = 0.0;
    c.seed = seed;
    return c;
  }
};

struct TruthEvent {
  std::size_t transition_index = 0;
  InstabilityType kind = InstabilityType::kStreaming;

  friend bool operator==(const TruthEvent&, const TruthEvent&) = default;
};

struct LabeledStream {
  PartialStream stream;
  std::vector<TruthEvent> truth_events;
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t UtteranceSeed(std::uint64_t seed, std::size_t index) {
  return SplitMix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

namespace detail {

/// Uniform integer in [lo, hi].
inline std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo,
                               std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(
                  static_cast<std::uint64_t>(UnitDouble(rng) *
                                             static_cast<double>(span)));
}

struct Precursor {
  InstabilityType kind;
  std::vector<std::string> words;  // rendered instead of the true token
  bool detached = false;           // Spacing: true token with a gap before
};

inline bool IsSingleToken(std::string_view s) {
  const auto t = Tokenize(s);
  return t.size() == 1 && t[0].surface() == s;
}

inline std::optional<std::string> StreamingPrefix(const std::string& word,
                                                  std::mt19937_64& rng) {
  std::vector<std::size_t> cuts;  // byte lengths of candidate prefixes
  for (std::size_t pos = 0; pos < word.size();) {
    pos += unicode::DecodeAt(word, pos).length;
    if (pos < word.size() && IsSingleToken(word.substr(0, pos))) {
      cuts.push_back(pos);
    }
  }
  if (cuts.empty()) return std::nullopt;
  const auto pick = UniformInt(rng, 0, static_cast<std::int64_t>(cuts.size()) - 1);
  return word.substr(0, cuts[static_cast<std::size_t>(pick)]);
}

inline std::optional<std::string> ToggleFirstLetter(const std::string& word) {
  if (word.empty()) return std::nullopt;
  const char c = word[0];
  std::string out = word;
  if (c >= 'a' && c <= 'z') {
    out[0] = static_cast<char>(c - 'a' + 'A');
  } else if (c >= 'A' && c <= 'Z') {
    out[0] = static_cast<char>(c - 'A' + 'a');
  } else {
    return std::nullopt;
  }
  return out;
}

}  // namespace detail

/// Builds one labeled stream whose final segment is `final_transcript`
/// byte for byte.
inline LabeledStream GenerateUtterance(std::string_view final_transcript,
                                       const GenConfig& config,
                                       const std::string& utterance_id = "utt",
                                       const Lexicons& lexicons = Lexicons()) {
  config.Validate();
  const TokenLayout layout = TokenizeWithLayout(final_transcript);
  const std::size_t n = layout.tokens.size();
  if (n == 0) {
    throw Error(ErrorCode::kEmptyTranscript,
                "transcript for '" + utterance_id + "' has no tokens");
  }
  std::mt19937_64 rng(config.seed);
  auto roll = [&](double p) { return p > 0.0 && UnitDouble(rng) < p; };

  // Speech timing.
  std::vector<std::int64_t> word_end(n);
  std::vector<std::int64_t> word_dur(n);
  std::int64_t clock = 0;
  for (std::size_t j = 0; j < n; ++j) {
    word_dur[j] = config.word_duration_ms +
                  detail::UniformInt(rng, -config.word_duration_jitter_ms,
                                     config.word_duration_jitter_ms);
    clock += word_dur[j];
    word_end[j] = clock;
  }

  // Precursor choice, at most one per token.
  std::vector<std::optional<detail::Precursor>> precursor(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::string& word = layout.tokens[j].surface();
    const bool is_punct = unicode::IsAllPunctuation(word);
    if (auto spoken = SpokenNumber(word); spoken && roll(config.p_numeral)) {
      precursor[j] = detail::Precursor{InstabilityType::kNumeral, *spoken};
      continue;
    }
    if (is_punct) {
      if (const auto* e = lexicons.brackets.FindSymbol(word);
          e && roll(config.p_punctuation_spoken_path)) {
        precursor[j] = detail::Precursor{
            InstabilityType::kPunctuation,
            detail::SplitWords(BracketKeyToPhrase(e->key))};
        continue;
      }
    }
    // A detached rendering is invisible while a dictated punctuation word to
    // the left already forces a gap.
    const bool gap_forced =
        j > 0 && !is_punct && precursor[j - 1] &&
        precursor[j - 1]->kind == InstabilityType::kPunctuation;
    if (j > 0 && !layout.gap_before[j] && !gap_forced &&
        roll(config.p_spacing)) {
      precursor[j] = detail::Precursor{InstabilityType::kSpacing, {word}, true};
      continue;
    }
    if (is_punct || unicode::ContainsAsciiDigit(word)) continue;
    if (auto toggled = detail::ToggleFirstLetter(word);
        toggled && roll(config.p_capitalization)) {
      precursor[j] =
          detail::Precursor{InstabilityType::kCapitalization, {*toggled}};
      continue;
    }
    if (roll(config.p_streaming_precursor)) {
      std::optional<std::string> early;
      if (auto it = config.confusion_table.find(word);
          it != config.confusion_table.end() && it->second != word &&
          detail::IsSingleToken(it->second)) {
        early = it->second;
      } else {
        early = detail::StreamingPrefix(word, rng);
      }
      if (early) {
        precursor[j] =
            detail::Precursor{InstabilityType::kStreaming, {std::move(*early)}};
      }
    }
  }

  // Schedule: (desired time, step kind, token). Appends sort before
  // resolutions at equal times.
  enum Step { kAppend = 0, kResolve = 1 };
  std::vector<std::tuple<std::int64_t, int, std::size_t>> steps;
  for (std::size_t j = 0; j < n; ++j) {
    if (!precursor[j]) {
      steps.emplace_back(word_end[j], kAppend, j);
    } else if (precursor[j]->kind == InstabilityType::kStreaming) {
      steps.emplace_back(word_end[j] - word_dur[j] / 2, kAppend, j);
      steps.emplace_back(word_end[j], kResolve, j);
    } else {
      const std::int64_t lag =
          detail::UniformInt(rng, config.word_duration_ms / 2,
                             config.word_duration_ms * 3 / 2);
      steps.emplace_back(word_end[j], kAppend, j);
      steps.emplace_back(word_end[j] + lag, kResolve, j);
    }
  }
  std::sort(steps.begin(), steps.end());

  std::vector<bool> pending(n, false);
  std::size_t shown = 0;
  auto render = [&]() {
    std::string out;
    for (std::size_t j = 0; j < shown; ++j) {
      const auto& pre = precursor[j];
      const bool in_precursor = pending[j];
      bool gap = layout.gap_before[j];
      if (in_precursor && pre->detached) gap = true;
      // A dictated punctuation word must not fuse with a glued neighbour.
      if (j > 0 && pending[j - 1] &&
          precursor[j - 1]->kind == InstabilityType::kPunctuation &&
          !unicode::IsAllPunctuation(layout.tokens[j].surface())) {
        gap = true;
      }
      if (in_precursor && pre->kind == InstabilityType::kPunctuation) gap = true;
      if (j > 0 && gap) out.push_back(' ');
      if (in_precursor && !pre->detached) {
        for (std::size_t w = 0; w < pre->words.size(); ++w) {
          if (w) out.push_back(' ');
          out += pre->words[w];
        }
      } else {
        out += layout.tokens[j].surface();
      }
    }
    return out;
  };

  const std::int64_t pei = config.raw_pei_ms;
  std::vector<Segment> segments;
  std::vector<TruthEvent> truth;
  std::int64_t last_tick = 0;
  for (const auto& [desired, step, j] : steps) {
    std::int64_t tick = std::max<std::int64_t>(1, (desired + pei - 1) / pei) * pei;
    tick = std::max(tick, last_tick + pei);
    last_tick = tick;
    if (step == kAppend) {
      ++shown;
      pending[j] = precursor[j].has_value();
    } else {
      pending[j] = false;
      truth.push_back({segments.size() - 1, precursor[j]->kind});
    }
    segments.emplace_back(tick, render(), false);
  }
  segments.emplace_back(last_tick + pei, std::string(final_transcript), true);
  return {PartialStream(utterance_id, std::move(segments)), std::move(truth)};
}

struct GeneratedCorpus {
  Corpus corpus;
  std::vector<std::vector<TruthEvent>> truth;  // parallel to corpus streams
};

inline std::string UtteranceId(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "utt%05zu", index + 1);
  return buf;
}

inline GeneratedCorpus GenerateCorpus(const std::vector<std::string>& transcripts,
                                      const GenConfig& config,
                                      const Lexicons& lexicons = Lexicons()) {
  if (transcripts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no transcripts to generate from");
  }
  GeneratedCorpus out;
  std::vector<PartialStream> streams;
  streams.reserve(transcripts.size());
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    GenConfig sub = config;
    sub.seed = UtteranceSeed(config.seed, i);
    auto ls = GenerateUtterance(transcripts[i], sub, UtteranceId(i), lexicons);
    streams.push_back(std::move(ls.stream));
    out.truth.push_back(std::move(ls.truth_events));
  }
  out.corpus = Corpus(std::move(streams));
  return out;
}

}  // namespace pstab

#endif  // PSTAB_GENERATOR_HPP_
