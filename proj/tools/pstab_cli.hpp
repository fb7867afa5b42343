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

// pstab command line. Exit status: 0 success, 1 validation or file error,
// 2 usage error. Every successful run writes <output>.manifest.json.

#ifndef PSTAB_TOOLS_PSTAB_CLI_HPP_
#define PSTAB_TOOLS_PSTAB_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pstab/pstab.hpp"

namespace pstab::cli {

namespace fs = std::filesystem;

inline std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

inline std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a sibling temp file and rename, so readers never see a
/// partially written output.
inline void WriteFileAtomic(const fs::path& path, std::string_view data) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to '" + path.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot move output into '" + path.string() + "'");
  }
}

inline std::vector<std::string> ReadLines(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

struct Options {
  std::string input;
  std::string output;
  std::string model;
  std::string lexicon_dir;
  std::string bracket_table;
  std::string truth;
  std::string mode = "lowercase";
  std::string threshold = "0.5";
  std::string pei = "50,100,200,400,800";
  std::uint64_t seed = 0;
  int epochs = 500;
  double learning_rate = 0.5;
  GenConfig gen;
};

inline std::vector<double> ParseNumberList(const std::string& text,
                                           const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "'" + item + "' is not a number");
    }
  }
  if (values.empty()) throw CLI::ValidationError(flag, "empty list");
  return values;
}

class Runner {
 public:
  Runner(std::string subcommand, const Options& opts, std::ostream& err)
      : subcommand_(std::move(subcommand)), opts_(opts), err_(err) {}

  int Execute() {
    if (subcommand_ == "metrics") return Metrics();
    if (subcommand_ == "classify") return Classify();
    if (subcommand_ == "normalize") return Normalize();
    if (subcommand_ == "sweep-pei") return SweepPei();
    if (subcommand_ == "sweep-threshold") return SweepThreshold();
    if (subcommand_ == "gate-train") return GateTrain();
    if (subcommand_ == "gate-apply") return GateApply();
    if (subcommand_ == "generate") return Generate();
    return 2;
  }

 private:
  Lexicons LoadLexicons() const {
    Lexicons lx = opts_.lexicon_dir.empty() ? Lexicons()
                                            : Lexicons::LoadDir(opts_.lexicon_dir);
    if (!opts_.bracket_table.empty()) {
      lx.brackets = BracketTokenTable::LoadFile(opts_.bracket_table);
    }
    return lx;
  }

  Corpus LoadCorpus() {
    input_text_ = ReadFile(opts_.input);
    inputs_.push_back(opts_.input);
    return ParseCorpus(input_text_);
  }

  GateModel LoadModel() {
    inputs_.push_back(opts_.model);
    return ParseModel(ReadFile(opts_.model));
  }

  void Emit(const std::string& path, const std::string& data) {
    WriteFileAtomic(path, data);
    outputs_.push_back(path);
  }

  int Finish(nlohmann::ordered_json config = nlohmann::ordered_json::object()) {
    nlohmann::ordered_json m;
    m["subcommand"] = subcommand_;
    m["tool_version"] = kVersion;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    m["config"] = std::move(config);
    m["corpus_sha256"] = Sha256Hex(corpus_text_ ? *corpus_text_ : input_text_);
    WriteFileAtomic(opts_.output + ".manifest.json", DumpJson(m));
    return 0;
  }

  int Metrics() {
    const auto stats = ComputeCorpusStability(LoadCorpus());
    Emit(opts_.output, DumpJson(ReportToJson(stats)));
    return Finish();
  }

  int Classify() {
    const auto corpus = LoadCorpus();
    const auto lx = LoadLexicons();
    InstabilityClassifier classifier(lx.numbers, lx.spoken_punctuation);
    Emit(opts_.output, DumpJson(TaxonomyToJson(ComputeTaxonomy(corpus, classifier))));
    return Finish({{"lexicon_dir", opts_.lexicon_dir}});
  }

  int Normalize() {
    const auto lx = LoadLexicons();
    nlohmann::ordered_json config = {{"mode", opts_.mode},
                                     {"lexicon_dir", opts_.lexicon_dir},
                                     {"bracket_table", opts_.bracket_table}};
    if (opts_.mode == "annotate") {
      // Transcript file in, transcript file out.
      input_text_ = ReadFile(opts_.input);
      inputs_.push_back(opts_.input);
      std::string out;
      for (const auto& line : ReadLines(opts_.input)) {
        out += AnnotateSpokenPunctuation(line, lx.spoken_punctuation);
        out.push_back('\n');
      }
      Emit(opts_.output, out);
      return Finish(std::move(config));
    }
    const auto corpus = LoadCorpus();
    Corpus result;
    if (opts_.mode == "lowercase") {
      result = LowercaseCorpus(corpus);
    } else {
      std::vector<PartialStream> streams;
      for (const auto& s : corpus.streams()) {
        std::vector<Segment> segs;
        for (const auto& seg : s.segments()) {
          auto conv = ConvertBracketTokens(seg.raw(), lx.brackets);
          for (const auto& w : conv.warnings) {
            err_ << "warning: " << s.utterance_id() << " t_ms=" << seg.t_ms()
                 << ": " << w << "\n";
          }
          segs.emplace_back(seg.t_ms(), std::move(conv.text), seg.is_final());
        }
        streams.emplace_back(s.utterance_id(), std::move(segs));
      }
      result = Corpus(std::move(streams));
    }
    Emit(opts_.output, SerializeCorpus(result));
    return Finish(std::move(config));
  }

  int SweepPei() {
    const auto corpus = LoadCorpus();
    const auto knobs = ParseNumberList(opts_.pei, "--pei");
    Emit(opts_.output, SweepToCsv(Sweep(corpus, SweepPolicy::kPei, knobs)));
    return Finish({{"pei", opts_.pei}});
  }

  int SweepThreshold() {
    const auto corpus = LoadCorpus();
    const auto model = LoadModel();
    const auto knobs = ParseNumberList(opts_.threshold, "--threshold");
    Emit(opts_.output,
         SweepToCsv(Sweep(corpus, SweepPolicy::kThreshold, knobs, &model)));
    return Finish({{"threshold", opts_.threshold}});
  }

  int GateTrain() {
    const auto corpus = LoadCorpus();
    const auto trained =
        TrainGate(corpus, opts_.epochs, opts_.learning_rate, opts_.seed);
    Emit(opts_.output, DumpJson(ModelToJson(trained.model)));
    err_ << "gate-train: final log-loss " << trained.loss_history.back() << "\n";
    return Finish({{"epochs", opts_.epochs},
                   {"learning_rate", opts_.learning_rate},
                   {"seed", opts_.seed}});
  }

  int GateApply() {
    const auto corpus = LoadCorpus();
    const auto model = LoadModel();
    const auto thresholds = ParseNumberList(opts_.threshold, "--threshold");
    if (thresholds.size() != 1) {
      throw CLI::ValidationError("--threshold", "gate-apply takes one value");
    }
    std::vector<PartialStream> streams;
    for (const auto& s : corpus.streams()) {
      streams.push_back(ApplyGate(s, model, thresholds[0]));
    }
    Emit(opts_.output, SerializeCorpus(Corpus(std::move(streams))));
    return Finish({{"threshold", thresholds[0]}});
  }

  int Generate() {
    std::vector<std::string> transcripts;
    for (auto& line : ReadLines(opts_.input)) {
      if (line.find_first_not_of(" \t") != std::string::npos) {
        transcripts.push_back(std::move(line));
      }
    }
    inputs_.push_back(opts_.input);
    GenConfig config = opts_.gen;
    config.seed = opts_.seed;
    const auto generated = GenerateCorpus(transcripts, config, LoadLexicons());
    corpus_text_ = SerializeCorpus(generated.corpus);
    Emit(opts_.output, *corpus_text_);
    const std::string truth_path =
        opts_.truth.empty() ? opts_.output + ".truth.jsonl" : opts_.truth;
    Emit(truth_path, TruthToJsonl(generated));
    return Finish({{"seed", config.seed},
                   {"raw_pei_ms", config.raw_pei_ms},
                   {"word_duration_ms", config.word_duration_ms},
                   {"word_duration_jitter_ms", config.word_duration_jitter_ms},
                   {"p_capitalization", config.p_capitalization},
                   {"p_numeral", config.p_numeral},
                   {"p_punctuation_spoken_path", config.p_punctuation_spoken_path},
                   {"p_streaming_precursor", config.p_streaming_precursor},
                   {"p_spacing", config.p_spacing}});
  }

  std::string subcommand_;
  const Options& opts_;
  std::ostream& err_;
  std::string input_text_;
  std::optional<std::string> corpus_text_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

inline int Run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"pstab: stability metrics and simulators for streaming "
               "recognition partials"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opts;

  auto add_io = [&](CLI::App* sub, const char* input_help) {
    sub->add_option("--input", opts.input, input_help)->required();
    sub->add_option("--output", opts.output, "Output path")->required();
  };
  auto add_lexicons = [&](CLI::App* sub) {
    sub->add_option("--lexicon-dir", opts.lexicon_dir,
                    "Directory with number_words.txt, spoken_punctuation.txt, "
                    "bracket_table.tsv");
    sub->add_option("--bracket-table", opts.bracket_table, "Bracket table TSV");
  };

  auto* metrics = app.add_subcommand("metrics", "UPWR/UPSR/mean delay report");
  add_io(metrics, "Stream file");

  auto* classify = app.add_subcommand("classify", "Instability taxonomy report");
  add_io(classify, "Stream file");
  add_lexicons(classify);

  auto* normalize = app.add_subcommand("normalize", "Apply a text normalizer");
  add_io(normalize, "Stream file (transcript file for --mode annotate)");
  add_lexicons(normalize);
  normalize->add_option("--mode", opts.mode, "lowercase | brackets | annotate")
      ->check(CLI::IsMember({"lowercase", "brackets", "annotate"}));

  auto* sweep_pei = app.add_subcommand("sweep-pei", "Sweep partial emission interval");
  add_io(sweep_pei, "Stream file");
  sweep_pei->add_option("--pei", opts.pei, "Comma-separated intervals in ms");

  auto* sweep_thr = app.add_subcommand("sweep-threshold", "Sweep gate threshold");
  add_io(sweep_thr, "Stream file");
  sweep_thr->add_option("--model", opts.model, "Gate model JSON")->required();
  sweep_thr->add_option("--threshold", opts.threshold, "Comma-separated thresholds")
      ->required();

  auto* train = app.add_subcommand("gate-train", "Train the stability gate");
  add_io(train, "Stream file");
  train->add_option("--epochs", opts.epochs)->check(CLI::PositiveNumber);
  train->add_option("--learning-rate", opts.learning_rate)
      ->check(CLI::PositiveNumber);
  train->add_option("--seed", opts.seed);

  auto* apply = app.add_subcommand("gate-apply", "Gate a stream file");
  add_io(apply, "Stream file");
  apply->add_option("--model", opts.model, "Gate model JSON")->required();
  apply->add_option("--threshold", opts.threshold)->required();

  auto* generate = app.add_subcommand("generate", "Generate a labeled synthetic corpus");
  add_io(generate, "Transcript file, one per line");
  add_lexicons(generate);
  generate->add_option("--seed", opts.seed)->required();
  generate->add_option("--truth", opts.truth,
                       "Truth label path (default <output>.truth.jsonl)");
  generate->add_option("--raw-pei", opts.gen.raw_pei_ms);
  generate->add_option("--word-duration", opts.gen.word_duration_ms);
  generate->add_option("--word-jitter", opts.gen.word_duration_jitter_ms);
  const auto prob = CLI::Range(0.0, 1.0);
  generate->add_option("--p-capitalization", opts.gen.p_capitalization)->check(prob);
  generate->add_option("--p-numeral", opts.gen.p_numeral)->check(prob);
  generate->add_option("--p-punctuation", opts.gen.p_punctuation_spoken_path)->check(prob);
  generate->add_option("--p-streaming", opts.gen.p_streaming_precursor)->check(prob);
  generate->add_option("--p-spacing", opts.gen.p_spacing)->check(prob);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return Runner(name, opts, err).Execute();
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pstab::cli

#endif  // PSTAB_TOOLS_PSTAB_CLI_HPP_
