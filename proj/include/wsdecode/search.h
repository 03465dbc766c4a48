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

#ifndef WSDECODE_SEARCH_H_
#define WSDECODE_SEARCH_H_

#include <optional>
#include <string>
#include <vector>

#include "wsdecode/decoder_config.h"
#include "wsdecode/fst.h"
#include "wsdecode/prefix_table.h"

namespace wsd {

struct SearchState {
  PrefixId prefix = kEmptyPrefix;
  int t = 0;  // consumed frames
  StateId fst_state = kNoState;
  std::vector<Label> words;
  double path_weight = 0.0;
  bool frozen = false;

  bool operator==(const SearchState&) const = default;
};

// -log(p_b + p_nb) of the state's (prefix, t) plus its graph path weight.
// Lower is better. Throws UsageError if the table has no entry.
double Score(const SearchState& state, const PrefixTable& table);

// The decoder's total order: score, then prefix id, graph state, frame
// index, word ids, frozen flag.
bool StateLess(const SearchState& a, double score_a, const SearchState& b,
               double score_b);

// Every child of one fringe expansion, before pruning. Non-frozen states
// produce a stay child and, for each phoneme above the floor, one child per
// graph outcome of feeding that phoneme; a child that lands on a word
// boundary is frozen. Frozen states pass through. Children that agree on
// (prefix, t, graph state, words) are merged, keeping the lower path weight;
// children with zero prefix probability are dropped.
std::vector<SearchState> GenerateChildren(const std::vector<SearchState>& fringe,
                                          PrefixTable& table,
                                          const FrameProbs& frames,
                                          const WeightedFst& fst,
                                          const DecoderConfig& config);

// Sorts by StateLess and keeps the first `beam_width`.
std::vector<SearchState> PruneToBeam(std::vector<SearchState> states,
                                     const PrefixTable& table, int beam_width);

// One round-robin step: every non-frozen state advances one frame.
// Requires a non-frozen state, and every non-frozen state below the last
// frame.
std::vector<SearchState> ExpandFringe(const std::vector<SearchState>& fringe,
                                      PrefixTable& table,
                                      const FrameProbs& frames,
                                      const WeightedFst& fst,
                                      const DecoderConfig& config);

struct Candidate {
  Label word = kEpsilon;
  std::string text;
  double score = 0.0;
  std::vector<size_t> support;  // fringe indices ending in this word
  int rank = 0;
};

// Groups frozen states by their newest word, scores each word by its best
// state, sorts by (score, text) and keeps `cap`.
std::vector<Candidate> BuildCandidates(const std::vector<SearchState>& fringe,
                                       const PrefixTable& table,
                                       const SymbolTable& words, int cap);

// Keeps the states whose newest word is `word` and unfreezes them.
std::vector<SearchState> SelectWord(const std::vector<SearchState>& fringe,
                                    Label word);

// True if there is a single candidate or the runner-up trails rank 0 by at
// least `threshold`.
bool AutoAcceptGap(const std::vector<Candidate>& candidates, double threshold);

struct InteractionOutcome {
  std::optional<std::string> selected;
  bool stop = false;

  static InteractionOutcome Stop() { return {std::nullopt, true}; }
  static InteractionOutcome Select(std::string word) {
    return {std::move(word), false};
  }
};

}  // namespace wsd

#endif  // WSDECODE_SEARCH_H_
