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

#ifndef WSDECODE_PIPELINE_H_
#define WSDECODE_PIPELINE_H_

#include <string>
#include <vector>

#include "wsdecode/bigram_lm.h"
#include "wsdecode/decoder_config.h"
#include "wsdecode/fst.h"
#include "wsdecode/lexicon.h"
#include "wsdecode/oracle.h"
#include "wsdecode/stats.h"
#include "wsdecode/synth.h"

namespace wsd {

struct GraphInputs {
  std::vector<LexiconEntry> lexicon;  // restricted to the vocabulary
  std::vector<std::string> vocab;
  BigramLm lm;
};

// Keeps the vocab_size most frequent corpus words that the lexicon can
// pronounce (ties broken lexicographically); other tokens become <unk>.
GraphInputs PrepareGraphInputs(const std::vector<LexiconEntry>& lexicon,
                               const Corpus& corpus, size_t vocab_size,
                               double discount = 0.75);

// L and G composed into the decoder graph.
WeightedFst BuildDecoderGraph(const GraphInputs& inputs,
                              const PhonemeInventory& inventory);

enum class EvalMode { kOracle, kStandard, kBoth };
EvalMode ParseEvalMode(std::string_view text);

struct EvalUtterance {
  std::string id;
  std::vector<std::string> transcript;
  FrameProbs frames;
};

struct StandardSession {
  std::string id;
  std::vector<std::string> reference;
  std::vector<std::string> hypothesis;
  int64_t edits = 0;
};

struct EvalReport {
  std::vector<SessionStats> oracle;
  std::vector<StandardSession> standard;
  OracleSummary summary;
  std::vector<WerRow> wer_rows;
};

EvalReport RunEval(const WeightedFst& graph,
                   const std::vector<EvalUtterance>& utterances,
                   const DecoderConfig& config, EvalMode mode);

std::vector<EvalUtterance> LoadManifest(const std::string& path);

// Writes sessions.json, summary.json, table1.txt, table2.txt and
// rank_histogram.csv. Contents depend only on the report and config.
void WriteEvalReports(const std::string& dir, const EvalReport& report,
                      const DecoderConfig& config, EvalMode mode);

}  // namespace wsd

#endif  // WSDECODE_PIPELINE_H_
