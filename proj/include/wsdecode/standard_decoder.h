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

#ifndef WSDECODE_STANDARD_DECODER_H_
#define WSDECODE_STANDARD_DECODER_H_

#include <string>
#include <vector>

#include "wsdecode/search.h"

namespace wsd {

struct StandardResult {
  std::vector<std::string> transcript;
  double score = 0.0;         // including the final weight when one exists
  bool reached_final = false;
};

// Conventional time-synchronous CTC prefix beam search over the decoder
// graph: every hypothesis advances one frame per step, words are emitted
// without pausing, and after the last frame the best hypothesis that can
// finish (final weight added) wins. If none can finish, the best-scoring
// hypothesis is returned with reached_final = false.
StandardResult StandardBeamDecode(const WeightedFst& fst,
                                  const FrameProbs& frames,
                                  const DecoderConfig& config);

}  // namespace wsd

#endif  // WSDECODE_STANDARD_DECODER_H_
