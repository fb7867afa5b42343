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

// Readers and writers for report, taxonomy, model, sweep and truth-label
// files.

#ifndef PSTAB_FORMATS_HPP_
#define PSTAB_FORMATS_HPP_

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pstab/classifier.hpp"
#include "pstab/error.hpp"
#include "pstab/gate.hpp"
#include "pstab/generator.hpp"
#include "pstab/metrics.hpp"

namespace pstab {

using OrderedJson = nlohmann::ordered_json;

inline std::string DumpJson(const OrderedJson& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

namespace detail {

inline OrderedJson ParseJsonOrThrow(std::string_view text, std::string_view what) {
  try {
    return OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string(what) + ": " + e.what());
  }
}

template <typename T>
T Field(const OrderedJson& j, const char* key, std::string_view what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string(what) + ": field '" +
                                                 key + "': " + e.what());
  }
}

}  // namespace detail

// -- stability report --------------------------------------------------------

inline OrderedJson ReportToJson(const CorpusStability& s) {
  OrderedJson j;
  j["upwr"] = s.upwr;
  j["upsr"] = s.upsr;
  j["mean_partial_delay_ms"] = s.mean_partial_delay_ms;
  j["n_utterances"] = s.per_utterance.size();
  j["n_final_words"] = s.n_final_words;
  auto& arr = j["per_utterance"] = OrderedJson::array();
  for (const auto& u : s.per_utterance) {
    OrderedJson e;
    e["utt"] = u.utterance_id;
    e["unstable_words"] = u.unstable_word_total;
    e["unstable_segments"] = u.unstable_segment_total;
    e["final_words"] = u.final_word_count;
    e["mean_delay_ms"] = u.mean_delay_ms();
    arr.push_back(std::move(e));
  }
  return j;
}

/// Summary fields of a report file; per-utterance rows are only checked.
struct ReportSummary {
  double upwr = 0, upsr = 0, mean_partial_delay_ms = 0;
  std::size_t n_utterances = 0, n_final_words = 0;
};

inline ReportSummary ParseReport(std::string_view text) {
  constexpr std::string_view kWhat = "report";
  const auto j = detail::ParseJsonOrThrow(text, kWhat);
  ReportSummary r;
  r.upwr = detail::Field<double>(j, "upwr", kWhat);
  r.upsr = detail::Field<double>(j, "upsr", kWhat);
  r.mean_partial_delay_ms = detail::Field<double>(j, "mean_partial_delay_ms", kWhat);
  r.n_utterances = detail::Field<std::size_t>(j, "n_utterances", kWhat);
  r.n_final_words = detail::Field<std::size_t>(j, "n_final_words", kWhat);
  const auto rows = detail::Field<std::vector<OrderedJson>>(j, "per_utterance", kWhat);
  if (rows.size() != r.n_utterances) {
    throw Error(ErrorCode::kMalformedRecord,
                "report: per_utterance length disagrees with n_utterances");
  }
  for (const auto& row : rows) {
    detail::Field<std::string>(row, "utt", kWhat);
    detail::Field<std::size_t>(row, "unstable_words", kWhat);
    detail::Field<std::size_t>(row, "unstable_segments", kWhat);
    detail::Field<std::size_t>(row, "final_words", kWhat);
    detail::Field<double>(row, "mean_delay_ms", kWhat);
  }
  return r;
}

// -- taxonomy ----------------------------------------------------------------

inline OrderedJson TaxonomyToJson(const TaxonomyReport& r) {
  OrderedJson j;
  OrderedJson counts, fractions;
  for (auto t : kAllInstabilityTypes) {
    const std::string name(InstabilityTypeName(t));
    counts[name] = r.count(t);
    fractions[name] = r.fraction(t);
  }
  j["counts"] = std::move(counts);
  j["fractions"] = std::move(fractions);
  j["total"] = r.total;
  j["zero_total"] = r.zero_total;
  return j;
}

inline TaxonomyReport ParseTaxonomy(std::string_view text) {
  constexpr std::string_view kWhat = "taxonomy";
  const auto j = detail::ParseJsonOrThrow(text, kWhat);
  TaxonomyReport r;
  const auto counts = detail::Field<OrderedJson>(j, "counts", kWhat);
  const auto fractions = detail::Field<OrderedJson>(j, "fractions", kWhat);
  for (auto t : kAllInstabilityTypes) {
    const std::string name(InstabilityTypeName(t));
    const auto k = static_cast<std::size_t>(t);
    r.counts[k] = detail::Field<std::size_t>(counts, name.c_str(), kWhat);
    r.fractions[k] = detail::Field<double>(fractions, name.c_str(), kWhat);
  }
  r.total = detail::Field<std::size_t>(j, "total", kWhat);
  r.zero_total = detail::Field<bool>(j, "zero_total", kWhat);
  return r;
}

// -- gate model --------------------------------------------------------------

inline OrderedJson ModelToJson(const GateModel& m) {
  const auto& lr = m.logistic();
  OrderedJson j;
  j["feature_names"] = m.feature_names();
  j["weights"] = lr.weights;
  j["bias"] = lr.bias;
  j["means"] = lr.means;
  j["stddevs"] = lr.stddevs;
  return j;
}

inline GateModel ParseModel(std::string_view text) {
  constexpr std::string_view kWhat = "model";
  const auto j = detail::ParseJsonOrThrow(text, kWhat);
  const auto names = detail::Field<std::vector<std::string>>(j, "feature_names", kWhat);
  if (names != GateFeatureNames()) {
    throw Error(ErrorCode::kMalformedRecord,
                "model: feature_names must be age_ms, age_segments, "
                "right_context, token_len");
  }
  LogisticModel lr;
  lr.weights = detail::Field<std::vector<double>>(j, "weights", kWhat);
  lr.bias = detail::Field<double>(j, "bias", kWhat);
  lr.means = detail::Field<std::vector<double>>(j, "means", kWhat);
  lr.stddevs = detail::Field<std::vector<double>>(j, "stddevs", kWhat);
  return GateModel(std::move(lr));
}

// -- sweep table -------------------------------------------------------------

inline constexpr std::string_view kSweepHeader =
    "knob,upwr,upsr,mean_partial_delay_ms";

inline std::string SweepToCsv(const std::vector<SweepPoint>& points) {
  std::string out(kSweepHeader);
  out.push_back('\n');
  char buf[160];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f\n", p.knob, p.upwr,
                  p.upsr, p.mean_partial_delay_ms);
    out += buf;
  }
  return out;
}

inline std::vector<SweepPoint> ParseSweepCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw Error(ErrorCode::kMalformedRecord, "sweep: bad or missing header");
  }
  std::vector<SweepPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SweepPoint p;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf%c", &p.knob, &p.upwr,
                    &p.upsr, &p.mean_partial_delay_ms, &tail) != 4) {
      throw Error(ErrorCode::kMalformedRecord,
                  "sweep: line " + std::to_string(line_no) + " is not 4 numbers");
    }
    points.push_back(p);
  }
  return points;
}

// -- truth labels ------------------------------------------------------------

struct TruthLabel {
  std::string utt;
  std::size_t transition_index = 0;
  InstabilityType kind = InstabilityType::kStreaming;

  friend bool operator==(const TruthLabel&, const TruthLabel&) = default;
};

inline std::string TruthToJsonl(const GeneratedCorpus& g) {
  std::string out;
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    for (const auto& ev : g.truth[i]) {
      OrderedJson j;
      j["utt"] = g.corpus.streams()[i].utterance_id();
      j["transition_index"] = ev.transition_index;
      j["kind"] = std::string(InstabilityTypeName(ev.kind));
      out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
      out.push_back('\n');
    }
  }
  return out;
}

inline std::vector<TruthLabel> ParseTruthLabels(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<TruthLabel> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string what = "truth line " + std::to_string(line_no);
    const auto j = detail::ParseJsonOrThrow(line, what);
    TruthLabel t;
    t.utt = detail::Field<std::string>(j, "utt", what);
    t.transition_index = detail::Field<std::size_t>(j, "transition_index", what);
    const auto kind = ParseInstabilityType(detail::Field<std::string>(j, "kind", what));
    if (!kind) {
      throw Error(ErrorCode::kMalformedRecord, what + ": unknown kind");
    }
    t.kind = *kind;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace pstab

#endif  // PSTAB_FORMATS_HPP_
