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

// Stream file format: UTF-8, one JSON object per line,
//   {"utt": "...", "t_ms": 100, "text": "...", "final": false}
// Records of one utterance may be interleaved with others; within an
// utterance they are ordered by t_ms. Blank lines are ignored.

#ifndef PSTAB_STREAM_IO_HPP_
#define PSTAB_STREAM_IO_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "pstab/error.hpp"
#include "pstab/stream.hpp"

namespace pstab {

namespace detail {

struct StreamRecord {
  std::int64_t t_ms;
  std::string text;
  bool final;
  std::size_t line;
};

inline bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

inline StreamRecord ParseRecord(const std::string& line, std::size_t line_no,
                                std::string* utt) {
  const auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kMalformedRecord,
                 "line " + std::to_string(line_no) + ": " + why);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw fail(std::string("invalid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw fail("record is not an object");
  for (const char* key : {"utt", "t_ms", "text", "final"}) {
    if (!j.contains(key)) throw fail(std::string("missing field '") + key + "'");
  }
  if (!j["utt"].is_string()) throw fail("'utt' must be a string");
  if (!j["t_ms"].is_number_integer()) throw fail("'t_ms' must be an integer");
  if (!j["text"].is_string()) throw fail("'text' must be a string");
  if (!j["final"].is_boolean()) throw fail("'final' must be a boolean");
  StreamRecord rec{j["t_ms"].get<std::int64_t>(), j["text"].get<std::string>(),
                   j["final"].get<bool>(), line_no};
  if (rec.t_ms < 0) throw fail("'t_ms' must be non-negative");
  *utt = j["utt"].get<std::string>();
  return rec;
}

}  // namespace detail

/// Reads and validates a stream file. Streams appear in order of their
/// first record; each stream's segments are sorted by t_ms.
inline Corpus ParseCorpus(std::istream& in) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<detail::StreamRecord>> groups;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::IsBlank(line)) continue;
    std::string utt;
    auto rec = detail::ParseRecord(line, line_no, &utt);
    auto [it, inserted] = groups.try_emplace(utt);
    if (inserted) order.push_back(utt);
    it->second.push_back(std::move(rec));
  }

  std::vector<PartialStream> streams;
  streams.reserve(order.size());
  for (const auto& utt : order) {
    auto& recs = groups[utt];
    std::stable_sort(recs.begin(), recs.end(),
                     [](const auto& a, const auto& b) { return a.t_ms < b.t_ms; });
    std::vector<Segment> segments;
    segments.reserve(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (i > 0 && recs[i].t_ms == recs[i - 1].t_ms) {
        throw Error(ErrorCode::kNonMonotonicTimestamp,
                    "utterance '" + utt + "': t_ms " +
                        std::to_string(recs[i].t_ms) + " repeated (lines " +
                        std::to_string(recs[i - 1].line) + " and " +
                        std::to_string(recs[i].line) + ")");
      }
      if (recs[i].final && recs[i].text.empty()) {
        throw Error(ErrorCode::kEmptyFinal,
                    "utterance '" + utt + "': final record on line " +
                        std::to_string(recs[i].line) + " has empty text");
      }
      segments.emplace_back(recs[i].t_ms, std::move(recs[i].text),
                            recs[i].final);
    }
    streams.emplace_back(utt, std::move(segments));
  }
  return Corpus(std::move(streams));
}

inline Corpus ParseCorpus(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseCorpus(in);
}

inline std::string SerializeSegment(const std::string& utt, const Segment& s) {
  nlohmann::ordered_json j;
  j["utt"] = utt;
  j["t_ms"] = s.t_ms();
  j["text"] = s.raw();
  j["final"] = s.is_final();
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

/// Inverse of ParseCorpus: one line per segment, streams in corpus order.
inline std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (const auto& stream : corpus.streams()) {
    for (const auto& seg : stream.segments()) {
      out += SerializeSegment(stream.utterance_id(), seg);
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace pstab

#endif  // PSTAB_STREAM_IO_HPP_
