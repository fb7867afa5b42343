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

// Emission policies that trade latency for stability:
//
//  * ResamplePei: show partials only on a fixed display clock.
//  * ApplyGate:   show only the token prefix whose stability score clears a
//                 threshold; scores come from a logistic model over
//                 per-token history features ("age" and friends).
//
// Sweep runs either policy over a range of knob values and reports corpus
// metrics for each.

#ifndef PSTAB_GATE_HPP_
#define PSTAB_GATE_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pstab/error.hpp"
#include "pstab/logistic.hpp"
#include "pstab/metrics.hpp"
#include "pstab/stream.hpp"
#include "pstab/unicode.hpp"

namespace pstab {

inline constexpr std::size_t kGateFeatureCount = 4;

inline const std::vector<std::string>& GateFeatureNames() {
  static const std::vector<std::string> names = {"age_ms", "age_segments",
                                                 "right_context", "token_len"};
  return names;
}

struct GateFeatures {
  /// Time since the token prefix ending here first appeared unchanged.
  std::int64_t age_ms = 0;
  /// Consecutive segments showing that prefix, including the current one.
  std::int64_t age_segments = 1;
  /// Tokens to the right in the current hypothesis.
  std::int64_t right_context = 0;
  /// Length in code points.
  std::int64_t token_len = 0;

  std::array<double, kGateFeatureCount> AsArray() const {
    return {static_cast<double>(age_ms), static_cast<double>(age_segments),
            static_cast<double>(right_context), static_cast<double>(token_len)};
  }
};

struct SegmentFeatures {
  std::size_t segment_index = 0;
  std::vector<GateFeatures> features;  // one per token
  std::vector<int> labels;             // 1 = prefix through token is final
};

/// Features and stability labels for every token of every non-final segment.
///
/// A token's age keeps growing while the prefix ending at it is unchanged
/// from one segment to the next; any change at or left of it restarts it.
inline std::vector<SegmentFeatures> ExtractFeatures(const PartialStream& stream) {
  const auto& segs = stream.segments();
  const auto& final_tokens = stream.final_segment().tokens();
  std::vector<SegmentFeatures> out;
  out.reserve(segs.size() - 1);

  std::vector<std::int64_t> run_start_ms;
  std::vector<std::int64_t> run_segments;
  const std::vector<Token>* prev = nullptr;
  for (std::size_t s = 0; s + 1 < segs.size(); ++s) {
    const auto& toks = segs[s].tokens();
    const std::size_t kept = prev ? FirstTokenMismatch(*prev, toks) : 0;
    run_start_ms.resize(toks.size());
    run_segments.resize(toks.size());
    for (std::size_t j = 0; j < toks.size(); ++j) {
      if (j < kept) {
        ++run_segments[j];
      } else {
        run_start_ms[j] = segs[s].t_ms();
        run_segments[j] = 1;
      }
    }

    SegmentFeatures sf;
    sf.segment_index = s;
    const std::size_t stable = FirstTokenMismatch(toks, final_tokens);
    for (std::size_t j = 0; j < toks.size(); ++j) {
      GateFeatures f;
      f.age_ms = segs[s].t_ms() - run_start_ms[j];
      f.age_segments = run_segments[j];
      f.right_context = static_cast<std::int64_t>(toks.size() - j - 1);
      f.token_len =
          static_cast<std::int64_t>(unicode::CodePointCount(toks[j].surface()));
      sf.features.push_back(f);
      sf.labels.push_back(j < stable ? 1 : 0);
    }
    out.push_back(std::move(sf));
    prev = &toks;
  }
  return out;
}

class GateModel {
 public:
  GateModel() : lr_(LogisticModel::Identity(kGateFeatureCount)) {}

  explicit GateModel(LogisticModel lr) : lr_(std::move(lr)) {
    if (lr_.weights.size() != kGateFeatureCount ||
        lr_.means.size() != kGateFeatureCount ||
        lr_.stddevs.size() != kGateFeatureCount) {
      throw Error(ErrorCode::kInvalidArgument,
                  "gate model needs exactly " +
                      std::to_string(kGateFeatureCount) + " features");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    bool ok = finite(lr_.bias);
    for (std::size_t k = 0; k < kGateFeatureCount; ++k) {
      ok = ok && finite(lr_.weights[k]) && finite(lr_.means[k]) &&
           finite(lr_.stddevs[k]) && lr_.stddevs[k] > 0;
    }
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "gate model parameters must be finite with positive stddevs");
    }
  }

  const LogisticModel& logistic() const noexcept { return lr_; }
  const std::vector<std::string>& feature_names() const {
    return GateFeatureNames();
  }

  double Score(const GateFeatures& x) const {
    const auto v = x.AsArray();
    return lr_.Score(v);
  }

 private:
  LogisticModel lr_;
};

inline double LogisticScore(const GateModel& model, const GateFeatures& x) {
  return model.Score(x);
}

inline Dataset GateDataset(const Corpus& corpus) {
  Dataset data;
  data.n_features = kGateFeatureCount;
  for (const auto& stream : corpus.streams()) {
    for (const auto& sf : ExtractFeatures(stream)) {
      for (std::size_t j = 0; j < sf.features.size(); ++j) {
        const auto v = sf.features[j].AsArray();
        data.Add(v, sf.labels[j]);
      }
    }
  }
  return data;
}

struct GateTraining {
  GateModel model;
  std::vector<double> loss_history;
};

inline GateTraining TrainGate(const Corpus& corpus, int epochs,
                              double learning_rate, std::uint64_t seed) {
  auto result = TrainLogistic(GateDataset(corpus),
                              TrainOptions{epochs, learning_rate, seed});
  return {GateModel(std::move(result.model)), std::move(result.loss_history)};
}

namespace detail {

/// Raw text up to the end of the first `n` tokens, so displayed prefixes keep
/// the spacing the recognizer produced.
inline std::string RawPrefix(const Segment& seg, std::size_t n) {
  if (n == seg.tokens().size()) return seg.raw();
  if (n == 0) return {};
  return seg.raw().substr(0, seg.layout().spans[n - 1].second);
}

}  // namespace detail

/// Withholds, per partial, every token from the first one scoring below
/// `threshold` onwards. The final segment is passed through untouched.
inline PartialStream ApplyGate(const PartialStream& stream,
                               const GateModel& model, double threshold) {
  if (!std::isfinite(threshold)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be finite");
  }
  const auto& segs = stream.segments();
  std::vector<Segment> out;
  std::optional<std::string> last_shown;
  for (const auto& sf : ExtractFeatures(stream)) {
    const Segment& seg = segs[sf.segment_index];
    std::size_t shown = 0;
    while (shown < sf.features.size() &&
           model.Score(sf.features[shown]) >= threshold) {
      ++shown;
    }
    std::string text = detail::RawPrefix(seg, shown);
    if (last_shown && *last_shown == text) continue;
    last_shown = text;
    out.emplace_back(seg.t_ms(), std::move(text), false);
  }
  out.push_back(stream.final_segment());
  return PartialStream(stream.utterance_id(), std::move(out));
}

/// Display clock at t = k * pei_ms (k >= 1). At each tick before the final
/// segment the most recent partial is shown, unless it is already on screen.
/// The final segment keeps its own timestamp.
inline PartialStream ResamplePei(const PartialStream& stream,
                                 std::int64_t pei_ms) {
  if (pei_ms < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "partial emission interval must be >= 1 ms, got " +
                    std::to_string(pei_ms));
  }
  const auto& segs = stream.segments();
  const std::int64_t final_t = stream.final_segment().t_ms();
  const std::size_t n_partials = segs.size() - 1;
  std::vector<Segment> out;
  for (std::size_t i = 0; i < n_partials; ++i) {
    const std::int64_t t = segs[i].t_ms();
    const std::int64_t tick = std::max<std::int64_t>(1, (t + pei_ms - 1) / pei_ms) * pei_ms;
    if (tick >= final_t) break;
    // Superseded before its first tick.
    if (i + 1 < n_partials && segs[i + 1].t_ms() <= tick) continue;
    if (!out.empty() && out.back().raw() == segs[i].raw()) continue;
    out.emplace_back(tick, segs[i].raw(), false);
  }
  out.push_back(stream.final_segment());
  return PartialStream(stream.utterance_id(), std::move(out));
}

enum class SweepPolicy { kPei, kThreshold };

struct SweepPoint {
  double knob = 0.0;
  double upwr = 0.0;
  double upsr = 0.0;
  double mean_partial_delay_ms = 0.0;
};

inline Corpus TransformCorpus(const Corpus& corpus, SweepPolicy policy,
                              double knob, const GateModel* model) {
  std::vector<PartialStream> streams;
  streams.reserve(corpus.size());
  if (policy == SweepPolicy::kPei) {
    const double rounded = std::round(knob);
    if (!std::isfinite(knob) || rounded != knob || knob < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "PEI values must be integers >= 1");
    }
    for (const auto& s : corpus.streams()) {
      streams.push_back(ResamplePei(s, static_cast<std::int64_t>(rounded)));
    }
  } else {
    if (model == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "threshold sweep needs a gate model");
    }
    for (const auto& s : corpus.streams()) {
      streams.push_back(ApplyGate(s, *model, knob));
    }
  }
  return Corpus(std::move(streams));
}

inline std::vector<SweepPoint> Sweep(const Corpus& corpus, SweepPolicy policy,
                                     const std::vector<double>& knobs,
                                     const GateModel* model = nullptr) {
  if (knobs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one value");
  }
  if (policy == SweepPolicy::kThreshold && model == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "threshold sweep needs a gate model");
  }
  std::vector<SweepPoint> points;
  points.reserve(knobs.size());
  for (double knob : knobs) {
    if (!(knob >= 0)) {
      throw Error(ErrorCode::kInvalidArgument, "sweep values must be >= 0");
    }
    const auto stats =
        ComputeCorpusStability(TransformCorpus(corpus, policy, knob, model));
    points.push_back({knob, stats.upwr, stats.upsr, stats.mean_partial_delay_ms});
  }
  return points;
}

}  // namespace pstab

#endif  // PSTAB_GATE_HPP_
