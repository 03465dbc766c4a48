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

#ifndef WSDECODE_ORACLE_H_
#define WSDECODE_ORACLE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wsdecode/interactive_decoder.h"

namespace wsd {

enum class OracleAction : int {
  kFoundCurrent = 0,
  kFoundNext = 1,
  kNotFound = 2,
  kTerminalNotFound = 3,  // the transcript's last word was not offered
};
inline constexpr int kNumOracleActions = 4;
std::string_view ActionName(OracleAction action);

struct OracleStep {
  std::optional<OracleAction> action;  // unset when the oracle just stops
  InteractionOutcome outcome;
  size_t cursor = 0;
  int rank = -1;  // rank of the selected candidate
};

// Simulated user. With cursor == |transcript| it stops. Otherwise it selects
// the current word if offered (cursor + 1), else the next word if offered
// (cursor + 2), else the best candidate without moving the cursor. When the
// missing word is the last one it stops instead (TerminalNotFound).
OracleStep OracleChoose(const std::vector<Candidate>& candidates,
                        const std::vector<std::string>& transcript,
                        size_t cursor);

struct Selection {
  OracleAction action;
  int rank;
};

struct SessionStats {
  std::string id;
  std::vector<std::string> reference;
  std::vector<std::string> hypothesis;
  std::array<int64_t, kNumOracleActions> counts{};
  std::vector<Selection> selections;
  int64_t interaction_points = 0;  // oracle actions, TerminalNotFound included
  int64_t auto_accepted = 0;
  int64_t edits = 0;
  double wer = 0.0;

  int64_t Count(OracleAction a) const { return counts[static_cast<int>(a)]; }
  nlohmann::json ToJson() const;
};

// Decodes one utterance with the oracle as the chooser. Points skipped by
// the auto-accept rule are not oracle actions; the cursor follows the
// accepted word as it would for a selection.
SessionStats RunOracleSession(const WeightedFst& fst, const FrameProbs& frames,
                              const std::vector<std::string>& transcript,
                              const DecoderConfig& config,
                              std::string id = {});

}  // namespace wsd

#endif  // WSDECODE_ORACLE_H_
