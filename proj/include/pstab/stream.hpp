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

// Partial-stream data model: tokens, timestamped segments, per-utterance
// streams and corpora. Everything here is immutable once constructed and
// validated in its constructor.

#ifndef PSTAB_STREAM_HPP_
#define PSTAB_STREAM_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/unicode.hpp"

namespace pstab {

/// A rendered word or punctuation mark. Never empty, never contains
/// whitespace. Comparison is exact byte (code point) equality.
class Token {
 public:
  explicit Token(std::string surface) : surface_(std::move(surface)) {
    if (surface_.empty()) {
      throw Error(ErrorCode::kInvalidToken, "empty token");
    }
    for (std::size_t pos = 0; pos < surface_.size();) {
      const auto d = unicode::DecodeAt(surface_, pos);
      if (unicode::IsSpace(d.cp)) {
        throw Error(ErrorCode::kInvalidToken,
                    "token contains whitespace: '" + surface_ + "'");
      }
      pos += d.length;
    }
  }

  const std::string& surface() const noexcept { return surface_; }

  friend bool operator==(const Token&, const Token&) = default;

 private:
  std::string surface_;
};

/// Token sequence plus the layout needed to reproduce what was on screen:
/// whether whitespace separated each token from its predecessor, and the
/// token's byte span in the source text.
struct TokenLayout {
  std::vector<Token> tokens;
  std::vector<bool> gap_before;  // gap_before[0] is always false
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [begin, end)
};

inline TokenLayout TokenizeWithLayout(std::string_view raw) {
  TokenLayout out;
  bool pending_gap = false;
  auto emit = [&](std::size_t begin, std::size_t end, bool gap) {
    out.tokens.emplace_back(std::string(raw.substr(begin, end - begin)));
    out.gap_before.push_back(gap && out.tokens.size() > 1);
    out.spans.emplace_back(begin, end);
  };

  std::size_t pos = 0;
  while (pos < raw.size()) {
    auto d = unicode::DecodeAt(raw, pos);
    if (unicode::IsSpace(d.cp)) {
      pending_gap = true;
      pos += d.length;
      continue;
    }
    // Chunk = maximal run of non-space code points.
    std::size_t chunk_begin = pos;
    std::size_t chunk_end = pos;
    while (chunk_end < raw.size()) {
      d = unicode::DecodeAt(raw, chunk_end);
      if (unicode::IsSpace(d.cp)) break;
      chunk_end += d.length;
    }
    pos = chunk_end;

    bool gap = pending_gap;
    pending_gap = false;
    std::size_t core_begin = chunk_begin;
    while (core_begin < chunk_end) {
      d = unicode::DecodeAt(raw, core_begin);
      if (!unicode::IsPunctuation(d.cp)) break;
      emit(core_begin, core_begin + d.length, gap);
      gap = false;
      core_begin += d.length;
    }
    if (core_begin == chunk_end) continue;  // all punctuation

    std::size_t core_end = chunk_end;
    std::vector<std::pair<std::size_t, std::size_t>> trailing;
    while (core_end > core_begin) {
      d = unicode::DecodeBefore(raw, core_end);
      if (!unicode::IsPunctuation(d.cp)) break;
      trailing.emplace_back(d.offset, core_end);
      core_end = d.offset;
    }
    emit(core_begin, core_end, gap);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
      emit(it->first, it->second, false);
    }
  }
  return out;
}

/// Splits on whitespace, then peels leading and trailing punctuation off each
/// chunk one code point at a time. Interior punctuation stays attached.
inline std::vector<Token> Tokenize(std::string_view raw) {
  return TokenizeWithLayout(raw).tokens;
}

/// Joins tokens with single spaces.
inline std::string JoinTokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface();
  }
  return out;
}

/// One emitted recognition result.
class Segment {
 public:
  Segment(std::int64_t t_ms, std::string raw, bool is_final)
      : t_ms_(t_ms), raw_(std::move(raw)), is_final_(is_final) {
    if (t_ms_ < 0) {
      throw Error(ErrorCode::kInvalidSegment,
                  "negative timestamp " + std::to_string(t_ms_));
    }
    if (is_final_ && raw_.empty()) {
      throw Error(ErrorCode::kEmptyFinal, "final segment has empty text");
    }
    layout_ = TokenizeWithLayout(raw_);
  }

  std::int64_t t_ms() const noexcept { return t_ms_; }
  const std::string& raw() const noexcept { return raw_; }
  bool is_final() const noexcept { return is_final_; }
  const std::vector<Token>& tokens() const noexcept { return layout_.tokens; }
  const TokenLayout& layout() const noexcept { return layout_; }

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.t_ms_ == b.t_ms_ && a.raw_ == b.raw_ && a.is_final_ == b.is_final_;
  }

 private:
  std::int64_t t_ms_;
  std::string raw_;
  bool is_final_;
  TokenLayout layout_;
};

/// One utterance: strictly time-ordered partials terminated by exactly one
/// final segment.
class PartialStream {
 public:
  PartialStream(std::string utterance_id, std::vector<Segment> segments)
      : utterance_id_(std::move(utterance_id)), segments_(std::move(segments)) {
    const std::string where = "utterance '" + utterance_id_ + "'";
    if (segments_.empty()) {
      throw Error(ErrorCode::kEmptyStream, where + " has no segments");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
      if (segments_[i].t_ms() <= segments_[i - 1].t_ms()) {
        throw Error(ErrorCode::kNonMonotonicTimestamp,
                    where + ": t_ms " + std::to_string(segments_[i].t_ms()) +
                        " does not follow " +
                        std::to_string(segments_[i - 1].t_ms()));
      }
    }
    std::size_t finals = 0;
    for (const auto& s : segments_) finals += s.is_final() ? 1 : 0;
    if (finals == 0) {
      throw Error(ErrorCode::kMissingFinal, where + " has no final segment");
    }
    if (finals > 1) {
      throw Error(ErrorCode::kDuplicateFinal,
                  where + " has " + std::to_string(finals) + " final segments");
    }
    if (!segments_.back().is_final()) {
      throw Error(ErrorCode::kFinalNotLast,
                  where + ": final segment is not the last one");
    }
  }

  const std::string& utterance_id() const noexcept { return utterance_id_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const Segment& final_segment() const noexcept { return segments_.back(); }

  friend bool operator==(const PartialStream&, const PartialStream&) = default;

 private:
  std::string utterance_id_;
  std::vector<Segment> segments_;
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<PartialStream> streams)
      : streams_(std::move(streams)) {
    std::unordered_set<std::string> seen;
    for (const auto& s : streams_) {
      if (!seen.insert(s.utterance_id()).second) {
        throw Error(ErrorCode::kDuplicateUtterance,
                    "utterance id '" + s.utterance_id() + "' repeated");
      }
    }
  }

  const std::vector<PartialStream>& streams() const noexcept {
    return streams_;
  }
  std::size_t size() const noexcept { return streams_.size(); }
  bool empty() const noexcept { return streams_.empty(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<PartialStream> streams_;
};

}  // namespace pstab

#endif  // PSTAB_STREAM_HPP_
