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

#include "wsdecode/standard_decoder.h"

#include <limits>

#include "wsdecode/error.h"

namespace wsd {

StandardResult StandardBeamDecode(const WeightedFst& fst,
                                  const FrameProbs& frames,
                                  const DecoderConfig& config) {
  config.Validate();
  if (!(fst.Phonemes() == frames.Phonemes())) {
    throw DataError("incompatible phoneme inventories between graph and frames");
  }
  PrefixTable table;
  SearchState root;
  root.fst_state = fst.Start();
  std::vector<SearchState> beam{root};
  for (int t = 0; t < frames.NumFrames() && !beam.empty(); ++t) {
    // Nothing is ever frozen here; word boundaries are simply passed through.
    beam = PruneToBeam(GenerateChildren(beam, table, frames, fst, config),
                       table, config.beam_width);
    for (auto& s : beam) s.frozen = false;
  }

  StandardResult result;
  const SearchState* best = nullptr;
  double best_score = std::numeric_limits<double>::infinity();
  bool best_final = false;
  for (const auto& s : beam) {
    const double score = Score(s, table);
    const auto final_weight = FinalWeightFrom(fst, s.fst_state);
    const bool is_final = final_weight.has_value();
    const double total = score + (is_final ? *final_weight : 0.0);
    // A finishing hypothesis always beats a non-finishing one.
    const bool better =
        best == nullptr || (is_final && !best_final) ||
        (is_final == best_final &&
         (total < best_score ||
          (total == best_score && StateLess(s, score, *best, Score(*best, table)))));
    if (better) {
      best = &s;
      best_score = total;
      best_final = is_final;
    }
  }
  if (best) {
    for (Label w : best->words) result.transcript.push_back(fst.Words().Symbol(w));
    result.score = best_score;
    result.reached_final = best_final;
  }
  return result;
}

}  // namespace wsd
