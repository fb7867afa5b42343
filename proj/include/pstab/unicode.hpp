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

// Minimal UTF-8 helpers: decoding, punctuation/whitespace classes and simple
// lowercase folding. Classes come from fixed generated tables so results do
// not depend on the platform locale.

#ifndef PSTAB_UNICODE_HPP_
#define PSTAB_UNICODE_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>

#include "pstab/detail/case_table.hpp"
#include "pstab/detail/punct_table.hpp"

namespace pstab::unicode {

inline constexpr char32_t kReplacementChar = 0xFFFD;

/// One decoded code point and the byte span it occupied.
struct Decoded {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
};

/// Decodes the code point starting at `pos`. Malformed sequences decode as
/// U+FFFD covering a single byte, so scanning always makes progress.
inline Decoded DecodeAt(std::string_view s, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(s[i]);
  };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) return {b0, pos, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min_cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min_cp = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min_cp = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min_cp = 0x10000;
  } else {
    return {kReplacementChar, pos, 1};
  }
  if (pos + len > s.size()) return {kReplacementChar, pos, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return {kReplacementChar, pos, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {kReplacementChar, pos, 1};
  }
  return {cp, pos, len};
}

/// Decodes the code point ending just before byte `end` (end > 0).
inline Decoded DecodeBefore(std::string_view s, std::size_t end) {
  std::size_t start = end - 1;
  while (start > 0 && end - start < 4 &&
         (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) {
    --start;
  }
  Decoded d = DecodeAt(s, start);
  if (d.offset + d.length != end) return {kReplacementChar, end - 1, 1};
  return d;
}

inline void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Unicode White_Space property.
constexpr bool IsSpace(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 ||
         cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

/// General category P*, or one of the ASCII symbols $ + < = > ^ ` | ~.
constexpr bool IsPunctuation(char32_t cp) {
  const auto& table = detail::kPunctuationRanges;
  auto it = std::upper_bound(
      table.begin(), table.end(), cp,
      [](char32_t c, const detail::CodePointRange& r) { return c < r.first; });
  if (it == table.begin()) return false;
  --it;
  return cp <= it->last;
}

constexpr bool IsAsciiDigit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

constexpr char32_t ToLower(char32_t cp) {
  for (const auto& run : detail::kLowercaseRuns) {
    if (cp < run.first) break;
    if (cp <= run.last && (cp - run.first) % run.stride == 0) {
      return static_cast<char32_t>(static_cast<std::int32_t>(cp) + run.delta);
    }
  }
  return cp;
}

inline std::string FoldCase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const Decoded d = DecodeAt(s, pos);
    if (d.cp == kReplacementChar) {
      out.append(s.substr(pos, d.length));
    } else {
      AppendUtf8(out, ToLower(d.cp));
    }
    pos += d.length;
  }
  return out;
}

inline bool IsAllPunctuation(std::string_view s) {
  if (s.empty()) return false;
  for (std::size_t pos = 0; pos < s.size();) {
    const Decoded d = DecodeAt(s, pos);
    if (!IsPunctuation(d.cp)) return false;
    pos += d.length;
  }
  return true;
}

inline bool ContainsAsciiDigit(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

inline std::size_t CodePointCount(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) pos += DecodeAt(s, pos).length;
  return n;
}

}  // namespace pstab::unicode

#endif  // PSTAB_UNICODE_HPP_
