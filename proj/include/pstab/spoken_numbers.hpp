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

// Written numerals to the words a speaker would say.

#ifndef PSTAB_SPOKEN_NUMBERS_HPP_
#define PSTAB_SPOKEN_NUMBERS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pstab {

namespace detail {

inline constexpr std::string_view kOnes[] = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen"};
inline constexpr std::string_view kTens[] = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety"};

inline void SayBelowThousand(int n, std::vector<std::string>& out) {
  if (n >= 100) {
    out.emplace_back(kOnes[n / 100]);
    out.emplace_back("hundred");
    n %= 100;
    if (n == 0) return;
  }
  if (n >= 20) {
    out.emplace_back(kTens[n / 10]);
    if (n % 10) out.emplace_back(kOnes[n % 10]);
  } else {
    out.emplace_back(kOnes[n]);
  }
}

inline void SayDigits(std::string_view digits, std::vector<std::string>& out) {
  for (char c : digits) {
    if (c >= '0' && c <= '9') out.emplace_back(kOnes[c - '0']);
  }
}

}  // namespace detail

/// Integers 0..999,999 as words ("1,234" -> one thousand two hundred thirty
/// four); leading-zero, longer or hyphenated digit strings are read digit by
/// digit; "d.d" adds "point" and reads the fraction digit by digit. Returns
/// nullopt for anything else.
inline std::optional<std::vector<std::string>> SpokenNumber(
    std::string_view token) {
  if (token.empty()) return std::nullopt;
  bool has_hyphen = false;
  bool has_comma = false;
  std::size_t dots = 0;
  std::size_t digits = 0;
  for (char c : token) {
    if (c >= '0' && c <= '9') {
      ++digits;
    } else if (c == '-') {
      has_hyphen = true;
    } else if (c == ',') {
      has_comma = true;
    } else if (c == '.') {
      ++dots;
    } else {
      return std::nullopt;
    }
  }
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  if (digits == 0 || !is_digit(token.front()) || !is_digit(token.back())) {
    return std::nullopt;
  }

  std::vector<std::string> out;
  if (has_hyphen) {
    if (has_comma || dots) return std::nullopt;
    detail::SayDigits(token, out);
    return out;
  }
  if (dots > 1 || (dots == 1 && has_comma)) return std::nullopt;

  std::string_view int_part = token;
  std::string_view frac_part;
  if (dots == 1) {
    const auto p = token.find('.');
    int_part = token.substr(0, p);
    frac_part = token.substr(p + 1);
  }
  std::string plain;
  if (has_comma) {
    // Grouping commas must sit every three digits from the right.
    std::size_t group = 0;
    for (auto it = int_part.rbegin(); it != int_part.rend(); ++it) {
      if (*it == ',') {
        if (group != 3) return std::nullopt;
        group = 0;
      } else {
        ++group;
        plain.insert(plain.begin(), *it);
      }
    }
  } else {
    plain = std::string(int_part);
  }

  if (plain.size() > 6 || (plain.size() > 1 && plain.front() == '0')) {
    detail::SayDigits(plain, out);
  } else {
    const int n = std::stoi(plain);
    if (n >= 1000) {
      detail::SayBelowThousand(n / 1000, out);
      out.emplace_back("thousand");
      if (n % 1000) detail::SayBelowThousand(n % 1000, out);
    } else {
      detail::SayBelowThousand(n, out);
    }
  }
  if (dots == 1) {
    out.emplace_back("point");
    detail::SayDigits(frac_part, out);
  }
  return out;
}

}  // namespace pstab

#endif  // PSTAB_SPOKEN_NUMBERS_HPP_
