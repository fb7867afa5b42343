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

// Output-side stabilizers: case folding of partials, bracket-token to symbol
// conversion, and the transcript annotator that produces bracket tokens.

#ifndef PSTAB_NORMALIZERS_HPP_
#define PSTAB_NORMALIZERS_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pstab/lexicon.hpp"
#include "pstab/stream.hpp"
#include "pstab/unicode.hpp"

namespace pstab {

namespace detail {

struct Chunk {
  std::string_view space_before;
  std::string_view text;
};

/// Splits `s` into whitespace-delimited chunks, remembering the exact
/// whitespace in front of each one. `trailing` receives what follows the last.
inline std::vector<Chunk> SplitChunks(std::string_view s,
                                      std::string_view* trailing) {
  std::vector<Chunk> out;
  std::size_t pos = 0;
  std::size_t ws_begin = 0;
  while (pos < s.size()) {
    auto d = unicode::DecodeAt(s, pos);
    if (unicode::IsSpace(d.cp)) {
      pos += d.length;
      continue;
    }
    const std::size_t begin = pos;
    while (pos < s.size()) {
      d = unicode::DecodeAt(s, pos);
      if (unicode::IsSpace(d.cp)) break;
      pos += d.length;
    }
    out.push_back({s.substr(ws_begin, begin - ws_begin),
                   s.substr(begin, pos - begin)});
    ws_begin = pos;
  }
  *trailing = s.substr(ws_begin);
  return out;
}

}  // namespace detail

/// Case-folds every partial. Segments that become identical to their
/// predecessor are dropped (the earlier timestamp survives); the final
/// segment is always kept.
inline PartialStream LowercaseStream(const PartialStream& stream) {
  std::vector<Segment> out;
  out.reserve(stream.segments().size());
  for (const auto& seg : stream.segments()) {
    std::string folded = unicode::FoldCase(seg.raw());
    if (!seg.is_final() && !out.empty() && out.back().raw() == folded) {
      continue;
    }
    out.emplace_back(seg.t_ms(), std::move(folded), seg.is_final());
  }
  return PartialStream(stream.utterance_id(), std::move(out));
}

inline Corpus LowercaseCorpus(const Corpus& corpus) {
  std::vector<PartialStream> streams;
  streams.reserve(corpus.size());
  for (const auto& s : corpus.streams()) streams.push_back(LowercaseStream(s));
  return Corpus(std::move(streams));
}

struct BracketConversion {
  std::string text;
  /// Bracketed chunks with no table entry; they are passed through as-is.
  std::vector<std::string> warnings;
};

/// Replaces whole chunks equal to a table key by their symbol and removes
/// the whitespace on the symbol's attachment side.
inline BracketConversion ConvertBracketTokens(std::string_view raw,
                                              const BracketTokenTable& table) {
  std::string_view trailing;
  const auto chunks = detail::SplitChunks(raw, &trailing);
  BracketConversion result;
  bool glue_next = false;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const auto& c = chunks[i];
    const BracketEntry* entry = table.FindKey(c.text);
    if (!entry && c.text.size() >= 2 && c.text.front() == '{' &&
        c.text.back() == '}') {
      result.warnings.push_back("unknown bracket token '" +
                                std::string(c.text) + "'");
    }
    const bool attach_left =
        entry && entry->attachment == Attachment::kLeft && i > 0;
    if (!glue_next && !attach_left) result.text += c.space_before;
    if (entry) {
      result.text += entry->symbol;
      glue_next = entry->attachment == Attachment::kRight &&
                  i + 1 < chunks.size();
    } else {
      result.text += c.text;
      glue_next = false;
    }
  }
  result.text += trailing;
  return result;
}

/// Rewrites dictated punctuation phrases as bracket tokens using greedy
/// longest match, e.g. "left quotation mark" -> "{left-quotation-mark}".
inline std::string AnnotateSpokenPunctuation(
    std::string_view transcript, const SpokenPunctuationLexicon& lexicon) {
  std::string_view trailing;
  const auto chunks = detail::SplitChunks(transcript, &trailing);
  std::vector<std::string> folded;
  folded.reserve(chunks.size());
  for (const auto& c : chunks) folded.push_back(unicode::FoldCase(c.text));

  std::string out;
  std::size_t i = 0;
  while (i < chunks.size()) {
    std::size_t matched = 0;
    const std::size_t longest =
        std::min(lexicon.max_phrase_words(), chunks.size() - i);
    for (std::size_t len = longest; len > 0; --len) {
      std::vector<std::string> words(folded.begin() + i,
                                     folded.begin() + i + len);
      if (lexicon.ContainsPhrase(words)) {
        out += chunks[i].space_before;
        out += PhraseToBracketKey(words);
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      out += chunks[i].space_before;
      out += chunks[i].text;
      matched = 1;
    }
    i += matched;
  }
  out += trailing;
  return out;
}

}  // namespace pstab

#endif  // PSTAB_NORMALIZERS_HPP_
