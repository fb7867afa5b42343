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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pstab_cli.hpp"
#include "test_support.hpp"

namespace pstab {
namespace {

namespace fs = std::filesystem;
using T = InstabilityType;

struct Outcome {
  bool ok = true;
  std::string detail;

  void Require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

GeneratedCorpus Synthetic(std::size_t n, std::uint64_t seed, GenConfig cfg = {}) {
  cfg.seed = seed;
  return GenerateCorpus(testing::CycledTranscripts(n), cfg);
}

// 1. Worked-example counts and ratios.
Outcome WorkedExampleExactness() {
  Outcome o;
  const auto u = ComputeUtteranceStability(testing::WorkedExampleStream());
  std::vector<std::size_t> counts;
  std::vector<std::size_t> revisions;
  for (std::size_t i = 0; i < u.per_transition.size(); ++i) {
    counts.push_back(u.per_transition[i].unstable_words);
    if (u.per_transition[i].is_revision) revisions.push_back(i);
  }
  o.Require(counts == std::vector<std::size_t>{0, 1, 1, 0, 4, 0, 2, 3},
            "per-transition counts differ");
  // 0-based transition i is segment i+1 -> i+2.
  o.Require(revisions == std::vector<std::size_t>{1, 2, 4, 6, 7},
            "revision flags differ");
  const auto c = ComputeCorpusStability(Corpus({testing::WorkedExampleStream()}));
  o.Require(std::abs(c.upwr - 11.0 / 9.0) <= 1e-9, Fmt("UPWR %.12f", c.upwr));
  o.Require(c.upsr == 5.0, Fmt("UPSR %.12f", c.upsr));
  if (o.ok) o.detail = Fmt("UPWR=%.6f UPSR=%.1f", c.upwr, c.upsr);
  return o;
}

// 2. Worked-example taxonomy.
Outcome WorkedExampleTaxonomy() {
  Outcome o;
  const auto events = ExtractEvents(testing::WorkedExampleStream(), InstabilityClassifier());
  std::vector<T> kinds;
  std::vector<std::size_t> at;
  for (const auto& e : events) {
    kinds.push_back(e.kind);
    at.push_back(e.transition_index);
  }
  o.Require(kinds == std::vector<T>{T::kPunctuation, T::kPunctuation,
                                    T::kCapitalization, T::kNumeral,
                                    T::kStreaming},
            "event kinds differ");
  o.Require(at == std::vector<std::size_t>{1, 2, 4, 6, 7}, "event positions differ");
  if (o.ok) o.detail = "Punctuation, Punctuation, Capitalization, Numeral, Streaming";
  return o;
}

// 3. Lowercase folding removes capitalization churn and never adds churn.
Outcome LowercaseStabilization() {
  Outcome o;
  GenConfig cfg;
  cfg.p_capitalization = 0.5;
  const auto g = Synthetic(200, 42, cfg);
  const auto folded = LowercaseCorpus(g.corpus);
  const auto tax = ComputeTaxonomy(folded, InstabilityClassifier());
  const auto before = ComputeCorpusStability(g.corpus);
  const auto after = ComputeCorpusStability(folded);
  const auto tax_before = ComputeTaxonomy(g.corpus, InstabilityClassifier());
  o.Require(tax_before.count(T::kCapitalization) > 0,
            "corpus has no capitalization events to remove");
  o.Require(tax.count(T::kCapitalization) == 0, "capitalization events remain");
  o.Require(after.upwr <= before.upwr, Fmt("UPWR rose %.4f -> %.4f", before.upwr, after.upwr));
  o.Require(after.upsr <= before.upsr, Fmt("UPSR rose %.4f -> %.4f", before.upsr, after.upsr));
  if (o.ok) {
    o.detail = Fmt("UPWR %.4f -> %.4f, ", before.upwr, after.upwr) +
               Fmt("UPSR %.4f -> %.4f", before.upsr, after.upsr);
  }
  return o;
}

// 4. Longer emission intervals trade delay for stability.
Outcome PeiTradeOff() {
  Outcome o;
  const auto g = Synthetic(200, 42);
  const auto pts = Sweep(g.corpus, SweepPolicy::kPei, {50, 100, 200, 400, 800});
  std::string trace;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    trace += Fmt("[%g: ", pts[i].knob) +
             Fmt("%.4f/%.3f/", pts[i].upwr, pts[i].upsr) +
             Fmt("%.1fms] ", pts[i].mean_partial_delay_ms);
    if (i == 0) continue;
    o.Require(pts[i].upwr <= pts[i - 1].upwr, "UPWR increased at " + trace);
    o.Require(pts[i].upsr <= pts[i - 1].upsr, "UPSR increased at " + trace);
    o.Require(pts[i].mean_partial_delay_ms >= pts[i - 1].mean_partial_delay_ms,
              "delay decreased at " + trace);
  }
  o.Require(pts[2].mean_partial_delay_ms > pts[0].mean_partial_delay_ms,
            "delay at 200 not above delay at 50");
  if (o.ok) o.detail = trace;
  return o;
}

// 5. Gate endpoints and direction across thresholds.
Outcome ThresholdGate() {
  Outcome o;
  const auto train = Synthetic(200, 7);
  const auto model = TrainGate(train.corpus, 500, 0.5, 42).model;
  const auto g = Synthetic(200, 42);
  const auto base = ComputeCorpusStability(g.corpus);

  const auto ends = Sweep(g.corpus, SweepPolicy::kThreshold, {0.0, 1.5}, &model);
  o.Require(ends[0].upwr == base.upwr && ends[0].upsr == base.upsr &&
                ends[0].mean_partial_delay_ms == base.mean_partial_delay_ms,
            "threshold 0 differs from ungated metrics");
  double num = 0, den = 0;
  for (const auto& s : g.corpus.streams()) {
    const double w = static_cast<double>(s.final_segment().tokens().size());
    num += w * static_cast<double>(s.final_segment().t_ms());
    den += w;
  }
  o.Require(ends[1].upwr == 0 && ends[1].upsr == 0, "threshold 1.5 not fully stable");
  o.Require(std::abs(ends[1].mean_partial_delay_ms - num / den) <= 1e-9,
            Fmt("closed-gate delay %.3f vs final-emission %.3f",
                ends[1].mean_partial_delay_ms, num / den));

  std::vector<double> th;
  for (int k = 1; k <= 9; ++k) th.push_back(k / 10.0);
  const auto pts = Sweep(g.corpus, SweepPolicy::kThreshold, th, &model);
  std::string trace;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    trace += Fmt("[%.1f: ", pts[i].knob) +
             Fmt("%.4f/%.3f/", pts[i].upwr, pts[i].upsr) +
             Fmt("%.1fms] ", pts[i].mean_partial_delay_ms);
    if (i == 0) continue;
    o.Require(pts[i].upwr <= pts[i - 1].upwr, "UPWR increased: " + trace);
    o.Require(pts[i].upsr <= pts[i - 1].upsr, "UPSR increased: " + trace);
    o.Require(pts[i].mean_partial_delay_ms >= pts[i - 1].mean_partial_delay_ms,
              "delay decreased: " + trace);
  }
  if (o.ok) o.detail = trace;
  return o;
}

// 6. Classifier against generator ground truth.
Outcome ClassifierAgreement() {
  Outcome o;
  const auto g = Synthetic(1000, 42);
  const InstabilityClassifier classifier;
  std::size_t total = 0, agree = 0;
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    std::map<std::size_t, T> predicted;
    for (const auto& e : ExtractEvents(g.corpus.streams()[i], classifier)) {
      predicted[e.transition_index] = e.kind;
    }
    for (const auto& t : g.truth[i]) {
      ++total;
      auto it = predicted.find(t.transition_index);
      if (it != predicted.end() && it->second == t.kind) ++agree;
    }
  }
  const double rate = total ? static_cast<double>(agree) / total : 0.0;
  o.Require(total >= 1000, Fmt("only %.0f labeled events", total));
  o.Require(rate >= 0.95, Fmt("agreement %.4f over %.0f events", rate, total));
  if (o.ok) o.detail = Fmt("agreement %.4f over %.0f events", rate, total);
  return o;
}

// 7. Gradient, separability and descent checks.
Outcome TrainerCorrectness() {
  Outcome o;
  const auto g = Synthetic(100, 42);
  const Dataset raw = GateDataset(g.corpus);
  LogisticModel scale = LogisticModel::Identity(kGateFeatureCount);
  {
    const auto fitted = TrainLogistic(raw, TrainOptions{1, 1e-3, 0}).model;
    scale.means = fitted.means;
    scale.stddevs = fitted.stddevs;
  }
  const Dataset z = Standardize(raw, scale);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  double worst = 0;
  for (int point = 0; point < 10; ++point) {
    auto m = scale;
    for (auto& w : m.weights) w = normal(rng);
    m.bias = normal(rng);
    const auto grad = LogLossGradient(m, z);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      auto plus = m, minus = m;
      (k < m.weights.size() ? plus.weights[k] : plus.bias) += 1e-5;
      (k < m.weights.size() ? minus.weights[k] : minus.bias) -= 1e-5;
      const double fd = (LogLoss(plus, z) - LogLoss(minus, z)) / 2e-5;
      const double rel = std::abs(grad[k] - fd) /
                         std::max({std::abs(grad[k]), std::abs(fd), 1e-8});
      worst = std::max(worst, rel);
    }
  }
  o.Require(worst <= 1e-5, Fmt("gradient relative error %.3g", worst));

  Dataset sep;
  sep.n_features = 1;
  sep.Add(std::vector<double>{1.0}, 1);
  sep.Add(std::vector<double>{-1.0}, 0);
  const auto r = TrainLogistic(sep, TrainOptions{500, 0.5, 0});
  const bool acc = r.model.Score(std::vector<double>{1.0}) >= 0.5 &&
                   r.model.Score(std::vector<double>{-1.0}) < 0.5;
  o.Require(acc && r.model.weights[0] > 0, "separable set not separated");

  const auto slow = TrainLogistic(raw, TrainOptions{500, 1e-3, 42});
  bool monotone = true;
  for (std::size_t i = 1; i < slow.loss_history.size(); ++i) {
    monotone &= slow.loss_history[i] <= slow.loss_history[i - 1];
  }
  o.Require(monotone, "loss increased at lr 1e-3");
  if (o.ok) o.detail = Fmt("max grad rel err %.2e, accuracy 1.0", worst);
  return o;
}

// 8. Same seed, same bytes; every output parses back.
Outcome DeterminismRoundTrip() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "pstab_acceptance";
  fs::remove_all(root);
  std::string transcripts;
  for (const auto& t : testing::CycledTranscripts(200)) transcripts += t + "\n";
  std::vector<std::map<std::string, std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::create_directories(dir);
    auto p = [&](const char* name) { return (dir / name).string(); };
    cli::WriteFileAtomic(p("transcripts.txt"), transcripts);
    const std::vector<std::vector<std::string>> steps = {
        {"generate", "--input", p("transcripts.txt"), "--output", p("corpus.jsonl"),
         "--seed", "42"},
        {"metrics", "--input", p("corpus.jsonl"), "--output", p("report.json")},
        {"classify", "--input", p("corpus.jsonl"), "--output", p("taxonomy.json")},
        {"sweep-pei", "--input", p("corpus.jsonl"), "--output", p("pei.csv")},
        {"gate-train", "--input", p("corpus.jsonl"), "--output", p("model.json"),
         "--seed", "42", "--epochs", "200"},
        {"sweep-threshold", "--input", p("corpus.jsonl"), "--output",
         p("threshold.csv"), "--model", p("model.json"), "--threshold",
         "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.5"},
    };
    for (const auto& step : steps) {
      std::vector<const char*> argv = {"pstab"};
      for (const auto& a : step) argv.push_back(a.c_str());
      std::ostringstream out, err;
      const int rc = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
      o.Require(rc == 0, step[0] + " failed: " + err.str());
    }
    if (!o.ok) return o;
    std::map<std::string, std::string> files;
    for (const char* name :
         {"corpus.jsonl", "corpus.jsonl.truth.jsonl", "report.json",
          "taxonomy.json", "pei.csv", "model.json", "threshold.csv"}) {
      files[name] = cli::ReadFile(p(name));
    }
    try {
      ParseCorpus(files["corpus.jsonl"]);
      ParseTruthLabels(files["corpus.jsonl.truth.jsonl"]);
      ParseReport(files["report.json"]);
      ParseTaxonomy(files["taxonomy.json"]);
      ParseSweepCsv(files["pei.csv"]);
      ParseModel(files["model.json"]);
      ParseSweepCsv(files["threshold.csv"]);
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().string().ends_with(".manifest.json")) {
          const auto manifest = nlohmann::json::parse(cli::ReadFile(entry.path()));
          o.Require(manifest.contains("corpus_sha256"), "manifest lacks digest");
        }
      }
    } catch (const std::exception& e) {
      o.Require(false, std::string("re-parse failed: ") + e.what());
    }
    runs.push_back(std::move(files));
  }
  for (const auto& [name, bytes] : runs[0]) {
    o.Require(runs[1].at(name) == bytes, name + " differs between runs");
  }
  fs::remove_all(root);
  if (o.ok) {
    o.detail = "7 outputs byte-identical, sha256(corpus)=" +
               cli::Sha256Hex(runs[0]["corpus.jsonl"]).substr(0, 16);
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace pstab

int main() {
  using namespace pstab;
  const std::vector<Criterion> criteria = {
      {1, "worked-example exactness", 1.0, WorkedExampleExactness},
      {2, "worked-example taxonomy", 1.0, WorkedExampleTaxonomy},
      {3, "lowercase stabilization", 5.0, LowercaseStabilization},
      {4, "PEI trade-off direction", 10.0, PeiTradeOff},
      {5, "threshold gate endpoints and direction", 20.0, ThresholdGate},
      {6, "classifier agreement with generator truth", 10.0, ClassifierAgreement},
      {7, "trainer correctness", 5.0, TrainerCorrectness},
      {8, "determinism and round-trip", 30.0, DeterminismRoundTrip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail = "over time budget; " + o.detail;
    }
    std::printf("[%s] criterion %d: %s (%.2fs / %.0fs) %s\n", o.ok ? "PASS" : "FAIL",
                c.id, c.name, secs, c.budget_s, o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
