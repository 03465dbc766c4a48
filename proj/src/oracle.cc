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

#include "wsdecode/oracle.h"

#include <algorithm>

#include "wsdecode/error.h"
#include "wsdecode/wer.h"

namespace wsd {

std::string_view ActionName(OracleAction action) {
  switch (action) {
    case OracleAction::kFoundCurrent: return "found_current";
    case OracleAction::kFoundNext: return "found_next";
    case OracleAction::kNotFound: return "not_found";
    case OracleAction::kTerminalNotFound: return "terminal_not_found";
  }
  return "unknown";
}

namespace {

const Candidate* FindWord(const std::vector<Candidate>& candidates,
                          const std::string& word) {
  auto it = std::find_if(candidates.begin(), candidates.end(),
                         [&](const Candidate& c) { return c.text == word; });
  return it == candidates.end() ? nullptr : &*it;
}

// Cursor movement implied by accepting `word` without an oracle decision.
size_t Follow(const std::vector<std::string>& transcript, size_t cursor,
              const std::string& word) {
  if (cursor < transcript.size() && transcript[cursor] == word) return cursor + 1;
  if (cursor + 1 < transcript.size() && transcript[cursor + 1] == word) {
    return cursor + 2;
  }
  return cursor;
}

}  // namespace

OracleStep OracleChoose(const std::vector<Candidate>& candidates,
                        const std::vector<std::string>& transcript,
                        size_t cursor) {
  if (cursor > transcript.size()) throw UsageError("oracle cursor out of range");
  OracleStep step;
  step.cursor = cursor;
  if (cursor == transcript.size() || candidates.empty()) {
    step.outcome = InteractionOutcome::Stop();
    return step;
  }
  if (const Candidate* c = FindWord(candidates, transcript[cursor])) {
    step.action = OracleAction::kFoundCurrent;
    step.outcome = InteractionOutcome::Select(c->text);
    step.cursor = cursor + 1;
    step.rank = c->rank;
    return step;
  }
  if (cursor + 1 < transcript.size()) {
    if (const Candidate* c = FindWord(candidates, transcript[cursor + 1])) {
      step.action = OracleAction::kFoundNext;
      step.outcome = InteractionOutcome::Select(c->text);
      step.cursor = cursor + 2;
      step.rank = c->rank;
      return step;
    }
    step.action = OracleAction::kNotFound;
    step.outcome = InteractionOutcome::Select(candidates.front().text);
    step.rank = candidates.front().rank;
    return step;
  }
  step.action = OracleAction::kTerminalNotFound;
  step.outcome = InteractionOutcome::Stop();
  return step;
}

nlohmann::json SessionStats::ToJson() const {
  nlohmann::json j;
  j["id"] = id;
  j["reference"] = reference;
  j["hypothesis"] = hypothesis;
  nlohmann::json counts_json;
  for (int a = 0; a < kNumOracleActions; ++a) {
    counts_json[std::string(ActionName(static_cast<OracleAction>(a)))] = counts[a];
  }
  j["actions"] = counts_json;
  auto ranks = nlohmann::json::array();
  for (const auto& s : selections) ranks.push_back(s.rank);
  j["selected_ranks"] = ranks;
  j["interaction_points"] = interaction_points;
  j["auto_accepted"] = auto_accepted;
  j["edits"] = edits;
  j["wer"] = wer;
  return j;
}

SessionStats RunOracleSession(const WeightedFst& fst, const FrameProbs& frames,
                              const std::vector<std::string>& transcript,
                              const DecoderConfig& config, std::string id) {
  if (transcript.empty()) throw UsageError("oracle session needs a transcript");
  SessionStats stats;
  stats.id = std::move(id);
  stats.reference = transcript;
  InteractiveSession session(fst, frames, config);
  size_t cursor = 0;
  while (cursor < transcript.size()) {
    const auto& candidates = session.NextInteraction();
    if (candidates.empty()) break;
    if (ShouldAutoAccept(config, candidates)) {
      ++stats.auto_accepted;
      cursor = Follow(transcript, cursor, candidates.front().text);
      session.Select(candidates.front().text);
      continue;
    }
    const OracleStep step = OracleChoose(candidates, transcript, cursor);
    if (step.action) {
      ++stats.interaction_points;
      ++stats.counts[static_cast<int>(*step.action)];
    }
    if (step.outcome.stop) break;
    stats.selections.push_back({*step.action, step.rank});
    cursor = step.cursor;
    session.Select(*step.outcome.selected);
  }
  session.Stop();
  stats.hypothesis = session.Transcript();
  stats.edits = EditDistance(stats.reference, stats.hypothesis);
  stats.wer = Wer(stats.reference, stats.hypothesis);
  return stats;
}

}  // namespace wsd
