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

#include "wsdecode/interactive_decoder.h"

#include <algorithm>
#include <cmath>

#include "wsdecode/error.h"

namespace wsd {

InteractiveSession::InteractiveSession(const WeightedFst& fst,
                                       const FrameProbs& frames,
                                       DecoderConfig config)
    : fst_(fst), frames_(frames), config_(std::move(config)) {
  config_.Validate();
  if (!(fst.Phonemes() == frames.Phonemes())) {
    throw DataError("incompatible phoneme inventories between graph and frames");
  }
  SearchState root;
  root.fst_state = fst.Start();
  fringe_.push_back(root);
}

const std::vector<Candidate>& InteractiveSession::NextInteraction() {
  if (phase_ == Phase::kAwaiting) return candidates_;
  candidates_.clear();
  if (phase_ == Phase::kFinished) return candidates_;

  const int last = frames_.NumFrames();
  while (true) {
    std::erase_if(fringe_, [&](const SearchState& s) {
      return !s.frozen && s.t >= last;
    });
    const bool live = std::any_of(fringe_.begin(), fringe_.end(),
                                  [](const SearchState& s) { return !s.frozen; });
    if (!live) break;
    fringe_ = ExpandFringe(fringe_, table_, frames_, fst_, config_);
  }
  if (fringe_.empty()) {
    phase_ = Phase::kFinished;
    return candidates_;
  }
  candidates_ = BuildCandidates(fringe_, table_, fst_.Words(),
                                config_.candidate_cap);
  phase_ = Phase::kAwaiting;
  return candidates_;
}

void InteractiveSession::Select(std::string_view word) {
  if (phase_ != Phase::kAwaiting) {
    throw UsageError("Select: no interaction point is pending");
  }
  auto it = std::find_if(candidates_.begin(), candidates_.end(),
                         [&](const Candidate& c) { return c.text == word; });
  if (it == candidates_.end()) {
    throw UsageError("Select: '" + std::string(word) + "' is not a listed candidate");
  }
  fringe_ = SelectWord(fringe_, it->word);
  transcript_.push_back(it->text);
  std::vector<PrefixId> keep;
  keep.reserve(fringe_.size());
  for (const auto& s : fringe_) keep.push_back(s.prefix);
  table_.Retain(keep);
  candidates_.clear();
  phase_ = Phase::kExpanding;
}

void InteractiveSession::Stop() {
  candidates_.clear();
  phase_ = Phase::kFinished;
}

bool ShouldAutoAccept(const DecoderConfig& config,
                      const std::vector<Candidate>& candidates) {
  if (!config.auto_accept_threshold || candidates.empty()) return false;
  const double threshold = *config.auto_accept_threshold;
  if (std::isinf(threshold) && threshold > 0) return false;
  return AutoAcceptGap(candidates, threshold);
}

InteractiveResult InteractiveDecode(const WeightedFst& fst,
                                    const FrameProbs& frames,
                                    const Chooser& chooser,
                                    const DecoderConfig& config) {
  InteractiveSession session(fst, frames, config);
  InteractiveResult result;
  while (true) {
    const auto& candidates = session.NextInteraction();
    if (candidates.empty()) break;
    InteractionRecord record;
    record.position = session.Position();
    record.candidates = candidates;
    if (ShouldAutoAccept(config, candidates)) {
      record.selected_rank = 0;
      record.auto_accepted = true;
      result.interactions.push_back(record);
      session.Select(candidates[0].text);
      continue;
    }
    const InteractionOutcome outcome = chooser(candidates, session.Position());
    if (outcome.stop || !outcome.selected) {
      result.interactions.push_back(std::move(record));
      session.Stop();
      break;
    }
    auto it = std::find_if(candidates.begin(), candidates.end(),
                           [&](const Candidate& c) { return c.text == *outcome.selected; });
    if (it == candidates.end()) {
      throw UsageError("chooser selected '" + *outcome.selected +
                       "', which is not a listed candidate");
    }
    record.selected_rank = it->rank;
    result.interactions.push_back(std::move(record));
    session.Select(*outcome.selected);
  }
  result.transcript = session.Transcript();
  return result;
}

}  // namespace wsd
