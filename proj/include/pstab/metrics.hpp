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

// Instability metrics over partial streams.
//
// A transition prev -> next is a *revision* when next does not extend prev:
// either a token inside the overlap changed, next is shorter (truncation), or
// the tokens agree but the whitespace layout between them changed. Unstable
// words are counted on the new segment, from the first mismatching position to
// the end of the overlap. Corpus figures:
//
//   UPWR = sum(unstable words) / sum(final hypothesis words)
//   UPSR = sum(revised segments) / number of utterances

#ifndef PSTAB_METRICS_HPP_
#define PSTAB_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/stream.hpp"

namespace pstab {

struct TransitionDiff {
  std::size_t first_mismatch = 0;
  std::size_t unstable_words = 0;
  bool is_revision = false;
  /// Tokens agree over the overlap but their spacing differs.
  bool spacing_only = false;

  friend bool operator==(const TransitionDiff&, const TransitionDiff&) = default;
};

inline std::size_t FirstTokenMismatch(const std::vector<Token>& a,
                                      const std::vector<Token>& b) {
  const std::size_t overlap = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < overlap && a[i] == b[i]) ++i;
  return i;
}

/// First overlap position whose whitespace-before flag differs, or the overlap
/// length when layouts agree.
inline std::size_t FirstGapMismatch(const TokenLayout& a, const TokenLayout& b) {
  const std::size_t overlap = std::min(a.tokens.size(), b.tokens.size());
  std::size_t i = 0;
  while (i < overlap && a.gap_before[i] == b.gap_before[i]) ++i;
  return i;
}

inline TransitionDiff SegmentDiff(const Segment& prev, const Segment& next) {
  const auto& a = prev.tokens();
  const auto& b = next.tokens();
  const std::size_t overlap = std::min(a.size(), b.size());
  TransitionDiff d;
  d.first_mismatch = FirstTokenMismatch(a, b);
  d.unstable_words = overlap - d.first_mismatch;
  if (d.first_mismatch < overlap) {
    d.is_revision = true;
  } else if (FirstGapMismatch(prev.layout(), next.layout()) < overlap) {
    d.is_revision = true;
    d.spacing_only = true;
  } else {
    d.is_revision = b.size() < a.size();  // truncation
  }
  return d;
}

struct UtteranceStability {
  std::string utterance_id;
  std::size_t unstable_word_total = 0;
  std::size_t unstable_segment_total = 0;
  std::size_t final_word_count = 0;
  std::vector<TransitionDiff> per_transition;
  std::vector<std::int64_t> word_delays_ms;

  double mean_delay_ms() const {
    if (word_delays_ms.empty()) return 0.0;
    double sum = 0.0;
    for (auto d : word_delays_ms) sum += static_cast<double>(d);
    return sum / static_cast<double>(word_delays_ms.size());
  }
};

/// word_delays_ms[j] is the earliest time any segment showed the final
/// token j at position j.
inline UtteranceStability ComputeUtteranceStability(const PartialStream& stream) {
  UtteranceStability u;
  u.utterance_id = stream.utterance_id();
  const auto& segs = stream.segments();
  u.per_transition.reserve(segs.size() - 1);
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const auto d = SegmentDiff(segs[i - 1], segs[i]);
    u.unstable_word_total += d.unstable_words;
    u.unstable_segment_total += d.is_revision ? 1 : 0;
    u.per_transition.push_back(d);
  }

  const auto& final_tokens = stream.final_segment().tokens();
  u.final_word_count = final_tokens.size();
  u.word_delays_ms.assign(final_tokens.size(), stream.final_segment().t_ms());
  std::vector<bool> seen(final_tokens.size(), false);
  for (const auto& seg : segs) {
    const auto& toks = seg.tokens();
    const std::size_t n = std::min(toks.size(), final_tokens.size());
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && toks[j] == final_tokens[j]) {
        seen[j] = true;
        u.word_delays_ms[j] = seg.t_ms();
      }
    }
  }
  return u;
}

struct CorpusStability {
  double upwr = 0.0;
  double upsr = 0.0;
  double mean_partial_delay_ms = 0.0;
  std::size_t n_final_words = 0;
  std::vector<UtteranceStability> per_utterance;
};

inline CorpusStability ComputeCorpusStability(const Corpus& corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no utterances");
  }
  CorpusStability c;
  c.per_utterance.reserve(corpus.size());
  std::size_t unstable_words = 0;
  std::size_t unstable_segments = 0;
  double delay_sum = 0.0;
  for (const auto& stream : corpus.streams()) {
    auto u = ComputeUtteranceStability(stream);
    if (u.final_word_count == 0) {
      throw Error(ErrorCode::kEmptyFinalHypothesis,
                  "utterance '" + stream.utterance_id() +
                      "' has a final hypothesis with no words");
    }
    unstable_words += u.unstable_word_total;
    unstable_segments += u.unstable_segment_total;
    c.n_final_words += u.final_word_count;
    for (auto d : u.word_delays_ms) delay_sum += static_cast<double>(d);
    c.per_utterance.push_back(std::move(u));
  }
  c.upwr = static_cast<double>(unstable_words) /
           static_cast<double>(c.n_final_words);
  c.upsr = static_cast<double>(unstable_segments) /
           static_cast<double>(corpus.size());
  c.mean_partial_delay_ms = delay_sum / static_cast<double>(c.n_final_words);
  return c;
}

}  // namespace pstab

#endif  // PSTAB_METRICS_HPP_
