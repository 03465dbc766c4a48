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

#ifndef WSDECODE_DECODER_CONFIG_H_
#define WSDECODE_DECODER_CONFIG_H_

#include <cmath>
#include <optional>
#include <string>

#include "json.hpp"

namespace wsd {

struct DecoderConfig {
  // Search states kept after each fringe expansion.
  int beam_width = 200;
  // Outcomes kept per phoneme fed into the graph.
  int fst_branch_cap = 20;
  // Word candidates offered at an interaction point.
  int candidate_cap = 100;
  // Phonemes whose frame log-probability is not above this are not tried.
  // Use -inf to expand every phoneme.
  double phoneme_floor = std::log(1e-5);
  // Score gap above which rank 0 is taken without asking. Unset or +inf
  // means always ask.
  std::optional<double> auto_accept_threshold;

  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing fields keep their defaults; unknown fields are rejected.
  static DecoderConfig FromJson(const nlohmann::json& j);
};

}  // namespace wsd

#endif  // WSDECODE_DECODER_CONFIG_H_
