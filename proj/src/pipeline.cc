// Copyright 2026 The wsdecode Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wsdecode/pipeline.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "wsdecode/compose.h"
#include "wsdecode/error.h"
#include "wsdecode/standard_decoder.h"
#include "wsdecode/wer.h"

namespace wsd {

GraphInputs PrepareGraphInputs(const std::vector<LexiconEntry>& lexicon,
                               const Corpus& corpus, size_t vocab_size,
                               double discount) {
  if (vocab_size == 0) throw UsageError("vocabulary size must be >= 1");
  std::set<std::string> pronounceable;
  for (const auto& e : lexicon) pronounceable.insert(e.word);
  Corpus known;
  known.reserve(corpus.size());
  for (const auto& sentence : corpus) {
    Sentence s;
    for (const auto& w : sentence) {
      if (pronounceable.count(w)) s.push_back(w);
    }
    known.push_back(std::move(s));
  }
  GraphInputs inputs;
  inputs.vocab = SelectVocab(known, vocab_size);
  if (inputs.vocab.empty()) {
    throw DataError("no corpus word has a lexicon pronunciation");
  }
  const std::set<std::string> vocab(inputs.vocab.begin(), inputs.vocab.end());
  for (const auto& e : lexicon) {
    if (vocab.count(e.word)) inputs.lexicon.push_back(e);
  }
  inputs.lm = TrainBigramKn(corpus, inputs.vocab, discount);
  return inputs;
}

WeightedFst BuildDecoderGraph(const GraphInputs& inputs,
                              const PhonemeInventory& inventory) {
  const WeightedFst l = BuildLexiconFst(inputs.lexicon, inventory);
  const WeightedFst g = LmToFst(inputs.lm);
  return ComposeDecoder(l, g);
}

EvalMode ParseEvalMode(std::string_view text) {
  if (text == "oracle") return EvalMode::kOracle;
  if (text == "standard") return EvalMode::kStandard;
  if (text == "both") return EvalMode::kBoth;
  throw UsageError("unknown eval mode '" + std::string(text) + "'");
}

EvalReport RunEval(const WeightedFst& graph,
                   const std::vector<EvalUtterance>& utterances,
                   const DecoderConfig& config, EvalMode mode) {
  config.Validate();
  EvalReport report;
  const bool oracle = mode != EvalMode::kStandard;
  const bool standard = mode != EvalMode::kOracle;
  for (const auto& u : utterances) {
    if (u.transcript.empty()) {
      throw DataError("utterance " + u.id + " has an empty transcript");
    }
    if (oracle) {
      report.oracle.push_back(
          RunOracleSession(graph, u.frames, u.transcript, config, u.id));
    }
    if (standard) {
      const StandardResult r = StandardBeamDecode(graph, u.frames, config);
      report.standard.push_back(
          {u.id, u.transcript, r.transcript, EditDistance(u.transcript, r.transcript)});
    }
  }
  report.summary = AggregateStats(report.oracle);
  if (standard) {
    WerRow row{"standard", 0, 0};
    for (const auto& s : report.standard) {
      row.edits += s.edits;
      row.reference_words += static_cast<int64_t>(s.reference.size());
    }
    report.wer_rows.push_back(row);
  }
  if (oracle) {
    report.wer_rows.push_back({"interactive-oracle", report.summary.edits,
                               report.summary.reference_words});
  }
  return report;
}

std::vector<EvalUtterance> LoadManifest(const std::string& path) {
  std::vector<EvalUtterance> out;
  for (const auto& m : ReadManifest(path)) {
    out.push_back({m.id, m.transcript, FrameProbs::Read(m.frames_path)});
  }
  return out;
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write " + path.string());
  os << text;
  if (!os) throw DataError("write failed: " + path.string());
}

}  // namespace

void WriteEvalReports(const std::string& dir, const EvalReport& report,
                      const DecoderConfig& config, EvalMode mode) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);

  nlohmann::json sessions;
  sessions["oracle"] = nlohmann::json::array();
  for (const auto& s : report.oracle) sessions["oracle"].push_back(s.ToJson());
  sessions["standard"] = nlohmann::json::array();
  for (const auto& s : report.standard) {
    nlohmann::json j;
    j["id"] = s.id;
    j["reference"] = s.reference;
    j["hypothesis"] = s.hypothesis;
    j["edits"] = s.edits;
    sessions["standard"].push_back(std::move(j));
  }
  WriteFile(base / "sessions.json", sessions.dump(2) + "\n");

  nlohmann::json summary;
  summary["mode"] = mode == EvalMode::kOracle     ? "oracle"
                    : mode == EvalMode::kStandard ? "standard"
                                                  : "both";
  summary["config"] = config.ToJson();
  summary["oracle"] = report.summary.ToJson();
  summary["wer"] = nlohmann::json::array();
  for (const auto& row : report.wer_rows) {
    summary["wer"].push_back({{"method", row.method},
                              {"edits", row.edits},
                              {"reference_words", row.reference_words},
                              {"wer", row.Wer()}});
  }
  WriteFile(base / "summary.json", summary.dump(2) + "\n");

  WriteFile(base / "table1.txt", FormatActionTable(report.summary));
  WriteFile(base / "table2.txt", FormatWerTable(report.wer_rows));
  WriteFile(base / "rank_histogram.csv",
            RankHistogramCsv(RankHistogram(report.oracle), config.candidate_cap));
}

}  // namespace wsd
