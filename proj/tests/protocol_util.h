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

#ifndef WSDECODE_TESTS_PROTOCOL_UTIL_H_
#define WSDECODE_TESTS_PROTOCOL_UTIL_H_

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsdecode/oracle.h"
#include "wsdecode/protocol.h"

namespace wsd::testing {

// Sends one message and returns every reply up to the point where the
// server waits for the client again.
using Exchange = std::function<std::vector<nlohmann::json>(const nlohmann::json&)>;

struct ClientRun {
  std::vector<std::string> transcript;
  nlohmann::json stats;
  std::vector<int> ranks;
  std::array<int64_t, kNumOracleActions> counts{};
  int candidate_messages = 0;
  int auto_accepted = 0;
  std::vector<std::string> errors;
};

inline std::vector<Candidate> ParseCandidates(const nlohmann::json& m) {
  std::vector<Candidate> out;
  for (const auto& c : m.at("candidates")) {
    Candidate x;
    x.text = c.at("word").get<std::string>();
    x.score = c.at("score").is_null() ? INFINITY : c.at("score").get<double>();
    x.rank = c.at("rank").get<int>();
    out.push_back(std::move(x));
  }
  return out;
}

inline nlohmann::json Hello(const FrameProbs& frames, const nlohmann::json& config = nullptr,
                            const std::vector<std::string>& reference = {}) {
  nlohmann::json h{{"kind", "hello"},
                   {"frames", nlohmann::json::parse(frames.ToJsonText())},
                   {"config", config}};
  if (!reference.empty()) h["reference"] = reference;
  return h;
}

// Drives a session. `choose` returns the word to select, or nullopt to stop.
inline ClientRun Drive(
    const Exchange& exchange, const nlohmann::json& hello,
    const std::function<std::optional<std::string>(const std::vector<Candidate>&)>& choose) {
  ClientRun run;
  std::vector<nlohmann::json> inbox = exchange(hello);
  std::string session_id;
  int last_position = 0;
  while (true) {
    std::optional<nlohmann::json> pending;
    for (const auto& m : inbox) {
      const std::string kind = m.at("kind");
      session_id = m.value("session_id", session_id);
      if (kind == "candidates") {
        ++run.candidate_messages;
        // Liveness: a new list only for a new position.
        if (m.at("position").get<int>() <= last_position) {
          run.errors.push_back("repeated position");
        }
        last_position = m.at("position").get<int>();
        pending = m;
      } else if (kind == "auto_accepted") {
        ++run.auto_accepted;
        last_position = m.at("position").get<int>();
      } else if (kind == "result") {
        run.transcript = m.at("transcript").get<std::vector<std::string>>();
      } else if (kind == "stats") {
        run.stats = m;
        return run;
      } else if (kind == "error") {
        run.errors.push_back(m.at("code").get<std::string>());
        return run;
      }
    }
    if (!pending) {
      run.errors.push_back("stalled");
      return run;
    }
    const auto candidates = ParseCandidates(*pending);
    const auto choice = choose(candidates);
    if (!choice) {
      inbox = exchange({{"kind", "stop"}, {"session_id", session_id}});
    } else {
      for (const auto& c : candidates) {
        if (c.text == *choice) run.ranks.push_back(c.rank);
      }
      inbox = exchange({{"kind", "select"}, {"session_id", session_id}, {"word", *choice}});
    }
  }
}

// The evaluation oracle as a protocol client.
inline ClientRun DriveOracle(const Exchange& exchange, const FrameProbs& frames,
                             const std::vector<std::string>& transcript) {
  size_t cursor = 0;
  std::array<int64_t, kNumOracleActions> counts{};
  ClientRun run = Drive(exchange, Hello(frames, nullptr, transcript),
                        [&](const std::vector<Candidate>& c) -> std::optional<std::string> {
                          if (cursor >= transcript.size()) return std::nullopt;
                          const OracleStep step = OracleChoose(c, transcript, cursor);
                          if (step.action) ++counts[static_cast<int>(*step.action)];
                          cursor = step.cursor;
                          return step.outcome.selected;
                        });
  run.counts = counts;
  return run;
}

}  // namespace wsd::testing

#endif  // WSDECODE_TESTS_PROTOCOL_UTIL_H_
