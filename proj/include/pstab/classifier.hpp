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

// Revision taxonomy. Each revised transition yields one event, classified by
// the first differing token pair.

#ifndef PSTAB_CLASSIFIER_HPP_
#define PSTAB_CLASSIFIER_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/lexicon.hpp"
#include "pstab/metrics.hpp"
#include "pstab/stream.hpp"
#include "pstab/unicode.hpp"

namespace pstab {

enum class InstabilityType {
  kPunctuation,
  kSpacing,
  kCapitalization,
  kNumeral,
  kStreaming,
};

inline constexpr std::array<InstabilityType, 5> kAllInstabilityTypes = {
    InstabilityType::kPunctuation, InstabilityType::kSpacing,
    InstabilityType::kCapitalization, InstabilityType::kNumeral,
    InstabilityType::kStreaming};

constexpr std::string_view InstabilityTypeName(InstabilityType t) {
  switch (t) {
    case InstabilityType::kPunctuation: return "Punctuation";
    case InstabilityType::kSpacing: return "Spacing";
    case InstabilityType::kCapitalization: return "Capitalization";
    case InstabilityType::kNumeral: return "Numeral";
    case InstabilityType::kStreaming: return "Streaming";
  }
  return "?";
}

inline std::optional<InstabilityType> ParseInstabilityType(std::string_view s) {
  for (auto t : kAllInstabilityTypes) {
    if (InstabilityTypeName(t) == s) return t;
  }
  return std::nullopt;
}

class InstabilityClassifier {
 public:
  InstabilityClassifier() = default;
  InstabilityClassifier(NumberLexicon numbers,
                        SpokenPunctuationLexicon spoken_punctuation)
      : numbers_(std::move(numbers)),
        spoken_punctuation_(std::move(spoken_punctuation)) {}

  /// Priority: Capitalization > Numeral > Punctuation > Streaming.
  InstabilityType ClassifyPair(const std::optional<Token>& old_token,
                               const std::optional<Token>& new_token) const {
    if (!old_token && !new_token) {
      throw Error(ErrorCode::kContractViolation,
                  "classify_pair needs at least one token");
    }
    if (old_token && new_token) {
      if (*old_token == *new_token) {
        throw Error(ErrorCode::kContractViolation,
                    "classify_pair called with identical tokens '" +
                        old_token->surface() + "'");
      }
      const auto& a = old_token->surface();
      const auto& b = new_token->surface();
      if (unicode::FoldCase(a) == unicode::FoldCase(b)) {
        return InstabilityType::kCapitalization;
      }
      const bool da = unicode::ContainsAsciiDigit(a);
      const bool db = unicode::ContainsAsciiDigit(b);
      if ((da && db) || (da && numbers_.Contains(b)) ||
          (db && numbers_.Contains(a))) {
        return InstabilityType::kNumeral;
      }
    }
    for (const auto* t : {&old_token, &new_token}) {
      if (*t && IsPunctuationToken((*t)->surface())) {
        return InstabilityType::kPunctuation;
      }
    }
    return InstabilityType::kStreaming;
  }

  bool IsPunctuationToken(std::string_view surface) const {
    return unicode::IsAllPunctuation(surface) ||
           spoken_punctuation_.ContainsWord(surface);
  }

  const NumberLexicon& numbers() const noexcept { return numbers_; }
  const SpokenPunctuationLexicon& spoken_punctuation() const noexcept {
    return spoken_punctuation_;
  }

 private:
  NumberLexicon numbers_;
  SpokenPunctuationLexicon spoken_punctuation_;
};

struct RevisionEvent {
  std::string utterance_id;
  /// Transition t is segments[t] -> segments[t + 1].
  std::size_t transition_index = 0;
  std::size_t first_mismatch = 0;
  std::optional<Token> old_token;
  std::optional<Token> new_token;
  InstabilityType kind = InstabilityType::kStreaming;
};

inline std::vector<RevisionEvent> ExtractEvents(
    const PartialStream& stream, const InstabilityClassifier& classifier) {
  std::vector<RevisionEvent> events;
  const auto& segs = stream.segments();
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    const auto& prev = segs[i];
    const auto& next = segs[i + 1];
    const auto diff = SegmentDiff(prev, next);
    if (!diff.is_revision) continue;

    RevisionEvent ev;
    ev.utterance_id = stream.utterance_id();
    ev.transition_index = i;
    const auto token_at = [](const Segment& s,
                             std::size_t j) -> std::optional<Token> {
      if (j < s.tokens().size()) return s.tokens()[j];
      return std::nullopt;
    };
    if (diff.spacing_only) {
      ev.first_mismatch = FirstGapMismatch(prev.layout(), next.layout());
      ev.kind = InstabilityType::kSpacing;
    } else {
      ev.first_mismatch = diff.first_mismatch;
    }
    ev.old_token = token_at(prev, ev.first_mismatch);
    ev.new_token = token_at(next, ev.first_mismatch);
    if (!diff.spacing_only) {
      ev.kind = classifier.ClassifyPair(ev.old_token, ev.new_token);
    }
    events.push_back(std::move(ev));
  }
  return events;
}

struct TaxonomyReport {
  std::array<std::size_t, 5> counts{};
  std::array<double, 5> fractions{};
  std::size_t total = 0;
  bool zero_total = true;

  std::size_t count(InstabilityType t) const {
    return counts[static_cast<std::size_t>(t)];
  }
  double fraction(InstabilityType t) const {
    return fractions[static_cast<std::size_t>(t)];
  }
};

inline TaxonomyReport ComputeTaxonomy(const Corpus& corpus,
                                      const InstabilityClassifier& classifier) {
  TaxonomyReport r;
  for (const auto& stream : corpus.streams()) {
    for (const auto& ev : ExtractEvents(stream, classifier)) {
      ++r.counts[static_cast<std::size_t>(ev.kind)];
      ++r.total;
    }
  }
  r.zero_total = r.total == 0;
  if (!r.zero_total) {
    for (std::size_t k = 0; k < r.counts.size(); ++k) {
      r.fractions[k] =
          static_cast<double>(r.counts[k]) / static_cast<double>(r.total);
    }
  }
  return r;
}

}  // namespace pstab

#endif  // PSTAB_CLASSIFIER_HPP_
