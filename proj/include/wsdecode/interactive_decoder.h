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

#ifndef WSDECODE_INTERACTIVE_DECODER_H_
#define WSDECODE_INTERACTIVE_DECODER_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsdecode/search.h"

namespace wsd {

// Word-synchronous decoding driven one interaction point at a time.
//
//   InteractiveSession session(fst, frames, config);
//   while (true) {
//     const auto& candidates = session.NextInteraction();
//     if (candidates.empty()) break;      // search exhausted
//     session.Select(candidates[0].text); // or session.Stop()
//   }
//
// NextInteraction() expands the fringe round-robin until every surviving
// state has emitted its word for the current position. A non-frozen state
// that runs out of frames is dropped; if nothing survives, the session
// finishes with the words accepted so far.
class InteractiveSession {
 public:
  // Throws DataError when the graph and frames use different inventories.
  InteractiveSession(const WeightedFst& fst, const FrameProbs& frames,
                     DecoderConfig config);

  const std::vector<Candidate>& NextInteraction();
  // `word` must be in the current candidate list.
  void Select(std::string_view word);
  void Stop();

  bool Finished() const { return phase_ == Phase::kFinished; }
  bool AwaitingSelection() const { return phase_ == Phase::kAwaiting; }
  // 1-based word position of the pending (or next) interaction point.
  int Position() const { return static_cast<int>(transcript_.size()) + 1; }
  const std::vector<std::string>& Transcript() const { return transcript_; }
  const std::vector<Candidate>& Candidates() const { return candidates_; }
  const std::vector<SearchState>& Fringe() const { return fringe_; }
  const PrefixTable& Table() const { return table_; }
  const DecoderConfig& Config() const { return config_; }

 private:
  enum class Phase { kExpanding, kAwaiting, kFinished };

  const WeightedFst& fst_;
  const FrameProbs& frames_;
  DecoderConfig config_;
  PrefixTable table_;
  std::vector<SearchState> fringe_;
  std::vector<Candidate> candidates_;
  std::vector<std::string> transcript_;
  Phase phase_ = Phase::kExpanding;
};

struct InteractionRecord {
  int position = 0;
  std::vector<Candidate> candidates;
  std::optional<int> selected_rank;  // unset when the chooser stopped
  bool auto_accepted = false;
};

struct InteractiveResult {
  std::vector<std::string> transcript;
  std::vector<InteractionRecord> interactions;
};

using Chooser = std::function<InteractionOutcome(
    const std::vector<Candidate>& candidates, int position)>;

// Runs a session to completion. With a finite auto_accept_threshold, points
// where AutoAcceptGap() holds take rank 0 without consulting `chooser`.
InteractiveResult InteractiveDecode(const WeightedFst& fst,
                                    const FrameProbs& frames,
                                    const Chooser& chooser,
                                    const DecoderConfig& config);

// True when the config asks to skip points with a clear winner.
bool ShouldAutoAccept(const DecoderConfig& config,
                      const std::vector<Candidate>& candidates);

}  // namespace wsd

#endif  // WSDECODE_INTERACTIVE_DECODER_H_
