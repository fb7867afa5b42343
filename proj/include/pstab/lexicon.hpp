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

// Word lists and the bracket-token table. The built-in defaults mirror the
// files under data/; loaders accept edited copies of those files.

#ifndef PSTAB_LEXICON_HPP_
#define PSTAB_LEXICON_HPP_

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/unicode.hpp"

namespace pstab {

namespace detail {

inline std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

/// Non-blank, non-comment lines with surrounding whitespace removed.
inline std::vector<std::string> ReadEntryLines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

inline std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace detail

inline constexpr std::string_view kDefaultNumberWords[] = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen", "twenty", "thirty",
    "forty", "fifty", "sixty", "seventy", "eighty", "ninety", "hundred",
    "thousand", "million", "billion", "first", "second", "third", "fourth",
    "fifth", "sixth", "seventh", "eighth", "ninth", "tenth", "eleventh",
    "twelfth", "thirteenth", "fourteenth", "fifteenth", "sixteenth",
    "seventeenth", "eighteenth", "nineteenth", "twentieth", "thirtieth",
    "fortieth", "fiftieth", "sixtieth", "seventieth", "eightieth",
    "ninetieth", "hundredth", "thousandth", "millionth", "billionth"};

/// Case-insensitive set of spoken number words.
class NumberLexicon {
 public:
  NumberLexicon() : NumberLexicon(std::vector<std::string>(
                        std::begin(kDefaultNumberWords),
                        std::end(kDefaultNumberWords))) {}

  explicit NumberLexicon(const std::vector<std::string>& words) {
    for (const auto& w : words) words_.insert(unicode::FoldCase(w));
  }

  static NumberLexicon Load(std::istream& in) {
    return NumberLexicon(detail::ReadEntryLines(in));
  }
  static NumberLexicon LoadFile(const std::filesystem::path& path) {
    auto in = detail::OpenOrThrow(path);
    return Load(in);
  }

  bool Contains(std::string_view word) const {
    return words_.count(unicode::FoldCase(word)) > 0;
  }
  const std::set<std::string>& words() const noexcept { return words_; }

 private:
  std::set<std::string> words_;
};

inline constexpr std::string_view kDefaultSpokenPunctuation[] = {
    "comma",
    "period",
    "exclamation mark",
    "exclamation point",
    "question mark",
    "colon",
    "semicolon",
    "ellipsis",
    "dash",
    "hyphen",
    "apostrophe",
    "quotation mark",
    "left quotation mark",
    "right quotation mark",
    "left single quotation mark",
    "right single quotation mark",
    "left parenthesis",
    "right parenthesis",
    "left bracket",
    "right bracket",
    "left curly bracket",
    "right curly bracket"};

/// Dictated punctuation phrases. Individual constituent words are also
/// exposed, since a multi-word phrase is revised one token at a time.
class SpokenPunctuationLexicon {
 public:
  SpokenPunctuationLexicon()
      : SpokenPunctuationLexicon(std::vector<std::string>(
            std::begin(kDefaultSpokenPunctuation),
            std::end(kDefaultSpokenPunctuation))) {}

  explicit SpokenPunctuationLexicon(const std::vector<std::string>& phrases) {
    for (const auto& p : phrases) {
      auto words = detail::SplitWords(unicode::FoldCase(p));
      if (words.empty()) continue;
      for (const auto& w : words) words_.insert(w);
      max_phrase_words_ = std::max(max_phrase_words_, words.size());
      phrases_.insert(std::move(words));
    }
  }

  static SpokenPunctuationLexicon Load(std::istream& in) {
    return SpokenPunctuationLexicon(detail::ReadEntryLines(in));
  }
  static SpokenPunctuationLexicon LoadFile(const std::filesystem::path& path) {
    auto in = detail::OpenOrThrow(path);
    return Load(in);
  }

  bool ContainsWord(std::string_view word) const {
    return words_.count(unicode::FoldCase(word)) > 0;
  }
  /// `words` must already be case-folded.
  bool ContainsPhrase(const std::vector<std::string>& words) const {
    return phrases_.count(words) > 0;
  }
  std::size_t max_phrase_words() const noexcept { return max_phrase_words_; }
  const std::set<std::vector<std::string>>& phrases() const noexcept {
    return phrases_;
  }

 private:
  std::set<std::vector<std::string>> phrases_;
  std::set<std::string> words_;
  std::size_t max_phrase_words_ = 0;
};

/// Which neighbour a converted symbol attaches to: kLeft joins the preceding
/// word ("Hello!"), kRight joins the following word ("(aside").
enum class Attachment { kLeft, kRight };

struct BracketEntry {
  std::string key;     // "{exclamation-mark}"
  std::string symbol;  // "!"
  Attachment attachment;
};

inline const std::vector<BracketEntry>& DefaultBracketEntries() {
  static const std::vector<BracketEntry> entries = {
      {"{comma}", ",", Attachment::kLeft},
      {"{period}", ".", Attachment::kLeft},
      {"{exclamation-mark}", "!", Attachment::kLeft},
      {"{question-mark}", "?", Attachment::kLeft},
      {"{colon}", ":", Attachment::kLeft},
      {"{semicolon}", ";", Attachment::kLeft},
      {"{ellipsis}", "…", Attachment::kLeft},
      {"{left-parenthesis}", "(", Attachment::kRight},
      {"{right-parenthesis}", ")", Attachment::kLeft},
      {"{left-bracket}", "[", Attachment::kRight},
      {"{right-bracket}", "]", Attachment::kLeft},
      {"{left-curly-bracket}", "{", Attachment::kRight},
      {"{right-curly-bracket}", "}", Attachment::kLeft},
      {"{left-quotation-mark}", "“", Attachment::kRight},
      {"{right-quotation-mark}", "”", Attachment::kLeft},
      {"{left-single-quotation-mark}", "‘", Attachment::kRight},
      {"{right-single-quotation-mark}", "’", Attachment::kLeft},
  };
  return entries;
}

/// "{left-quotation-mark}" -> "left quotation mark". Empty if `key` is not
/// a well-formed bracket key.
inline std::string BracketKeyToPhrase(std::string_view key) {
  if (key.size() < 3 || key.front() != '{' || key.back() != '}') return {};
  std::string inner(key.substr(1, key.size() - 2));
  bool prev_hyphen = true;
  for (char& c : inner) {
    if (c == '-') {
      if (prev_hyphen) return {};
      c = ' ';
      prev_hyphen = true;
    } else if (c >= 'a' && c <= 'z') {
      prev_hyphen = false;
    } else {
      return {};
    }
  }
  if (prev_hyphen) return {};
  return inner;
}

/// "left quotation mark" -> "{left-quotation-mark}".
inline std::string PhraseToBracketKey(const std::vector<std::string>& words) {
  std::string key = "{";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) key.push_back('-');
    key += words[i];
  }
  key.push_back('}');
  return key;
}

/// Injective map from bracket tokens to punctuation symbols.
class BracketTokenTable {
 public:
  BracketTokenTable() : BracketTokenTable(DefaultBracketEntries()) {}

  explicit BracketTokenTable(std::vector<BracketEntry> entries)
      : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (BracketKeyToPhrase(e.key).empty()) {
        throw Error(ErrorCode::kMalformedTable,
                    "key '" + e.key +
                        "' is not of the form {lowercase-hyphen-words}");
      }
      if (!unicode::IsAllPunctuation(e.symbol)) {
        throw Error(ErrorCode::kMalformedTable,
                    "symbol for '" + e.key + "' is empty or not punctuation");
      }
      if (!by_key_.emplace(e.key, i).second) {
        throw Error(ErrorCode::kMalformedTable, "duplicate key '" + e.key + "'");
      }
      if (!by_symbol_.emplace(e.symbol, i).second) {
        throw Error(ErrorCode::kMalformedTable,
                    "symbol '" + e.symbol + "' mapped twice");
      }
    }
  }

  /// Lines of "key<TAB>symbol<TAB>L|R"; '#' starts a comment line.
  static BracketTokenTable Load(std::istream& in) {
    std::vector<BracketEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields;
      std::size_t start = 0;
      for (;;) {
        const auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      if (fields.size() != 3 || (fields[2] != "L" && fields[2] != "R")) {
        throw Error(ErrorCode::kMalformedTable,
                    "line " + std::to_string(line_no) +
                        ": expected key<TAB>symbol<TAB>L|R");
      }
      entries.push_back({fields[0], fields[1],
                         fields[2] == "L" ? Attachment::kLeft
                                          : Attachment::kRight});
    }
    return BracketTokenTable(std::move(entries));
  }
  static BracketTokenTable LoadFile(const std::filesystem::path& path) {
    auto in = detail::OpenOrThrow(path);
    return Load(in);
  }

  const BracketEntry* FindKey(std::string_view key) const {
    auto it = by_key_.find(std::string(key));
    return it == by_key_.end() ? nullptr : &entries_[it->second];
  }
  const BracketEntry* FindSymbol(std::string_view symbol) const {
    auto it = by_symbol_.find(std::string(symbol));
    return it == by_symbol_.end() ? nullptr : &entries_[it->second];
  }
  const std::vector<BracketEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<BracketEntry> entries_;
  std::map<std::string, std::size_t> by_key_;
  std::map<std::string, std::size_t> by_symbol_;
};

/// Default attachment for symbols outside any table.
inline std::optional<Attachment> TypographicAttachment(std::string_view symbol) {
  static constexpr std::string_view kLeft[] = {
      ".", ",", "!", "?", ";", ":", ")", "]", "}", "”", "’"};
  static constexpr std::string_view kRight[] = {"(", "[", "{", "“",
                                                "‘"};
  for (auto s : kLeft) {
    if (s == symbol) return Attachment::kLeft;
  }
  for (auto s : kRight) {
    if (s == symbol) return Attachment::kRight;
  }
  return std::nullopt;
}

/// Bundle of all word lists used by classification and normalization.
struct Lexicons {
  NumberLexicon numbers;
  SpokenPunctuationLexicon spoken_punctuation;
  BracketTokenTable brackets;

  /// Loads number_words.txt, spoken_punctuation.txt and bracket_table.tsv
  /// from `dir`; any missing file falls back to the built-in default.
  static Lexicons LoadDir(const std::filesystem::path& dir) {
    Lexicons lx;
    if (!std::filesystem::is_directory(dir)) {
      throw Error(ErrorCode::kIo, "'" + dir.string() + "' is not a directory");
    }
    if (auto p = dir / "number_words.txt"; std::filesystem::exists(p)) {
      lx.numbers = NumberLexicon::LoadFile(p);
    }
    if (auto p = dir / "spoken_punctuation.txt"; std::filesystem::exists(p)) {
      lx.spoken_punctuation = SpokenPunctuationLexicon::LoadFile(p);
    }
    if (auto p = dir / "bracket_table.tsv"; std::filesystem::exists(p)) {
      lx.brackets = BracketTokenTable::LoadFile(p);
    }
    return lx;
  }
};

}  // namespace pstab

#endif  // PSTAB_LEXICON_HPP_
