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

#ifndef WSDECODE_PREFIX_TABLE_H_
#define WSDECODE_PREFIX_TABLE_H_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "wsdecode/frame_probs.h"
#include "wsdecode/log_math.h"

namespace wsd {

using PrefixId = int32_t;
inline constexpr PrefixId kEmptyPrefix = 0;

// Interned phoneme sequences. Each id is a node in a prefix tree holding its
// parent and last phoneme, so extending a sequence never copies it.
class PrefixTree {
 public:
  PrefixTree();

  PrefixId Extend(PrefixId parent, Label phoneme);
  PrefixId Parent(PrefixId id) const { return nodes_[id].parent; }
  Label Last(PrefixId id) const { return nodes_[id].last; }
  int32_t Length(PrefixId id) const { return nodes_[id].length; }
  std::vector<Label> Sequence(PrefixId id) const;
  // Interns a whole sequence.
  PrefixId Intern(std::span<const Label> phonemes);
  int32_t Size() const { return static_cast<int32_t>(nodes_.size()); }

 private:
  struct Node {
    PrefixId parent;
    Label last;
    int32_t length;
  };
  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, PrefixId> children_;
};

// CTC prefix probabilities in log space. p_b: the first t frames produce the
// prefix and frame t-1 is blank. p_nb: frame t-1 emits the last phoneme.
struct PrefixProbs {
  double log_p_b = kLogZero;
  double log_p_nb = kLogZero;

  double LogTotal() const { return LogAdd(log_p_b, log_p_nb); }
  bool operator==(const PrefixProbs&) const = default;
};

// Memo table keyed by (prefix, t). An entry at t+1 receives at most two
// contributions: the "stay" route from (prefix, t) and the "extend" route
// from (parent, t). Each route is applied at most once, so re-advancing a key
// returns the stored value unchanged.
//
// Once both routes into an entry have been applied from complete sources
// the entry holds the exact bucketed alignment sums; Complete() drives that
// recursively and is what the decoders score with.
class PrefixTable {
 public:
  // Starts as {(empty, 0) -> (p_b = 1, p_nb = 0)}.
  PrefixTable();

  PrefixTree& Tree() { return tree_; }
  const PrefixTree& Tree() const { return tree_; }

  const PrefixProbs* Find(PrefixId prefix, int t) const;
  // Throws UsageError when the entry is absent.
  double PrefixLogProb(PrefixId prefix, int t) const;

  // p_b(l,t+1) += Phi[t][blank] * (p_b(l,t) + p_nb(l,t))
  // p_nb(l,t+1) += Phi[t][last(l)] * p_nb(l,t)      (nothing for empty l)
  const PrefixProbs& AdvanceStay(PrefixId prefix, int t,
                                 const FrameProbs& frames);

  struct Extended {
    PrefixId prefix;
    const PrefixProbs* probs;
  };
  // p_nb(l+p,t+1) += Phi[t][p] * (p_b(l,t) + p_nb(l,t))   if p != last(l)
  // p_nb(l+p,t+1) += Phi[t][p] * p_b(l,t)                 if p == last(l)
  Extended AdvanceExtend(PrefixId prefix, Label phoneme, int t,
                         const FrameProbs& frames);

  // Ensures (prefix, t) has both incoming routes applied from complete
  // sources, materialising predecessors as needed.
  const PrefixProbs& Complete(PrefixId prefix, int t, const FrameProbs& frames);

  // Drops entries whose prefix is neither an ancestor nor a descendant of a
  // kept prefix. Scores of the kept lineages are unaffected.
  void Retain(std::span<const PrefixId> keep);

  size_t NumEntries() const { return entries_.size(); }

 private:
  struct Entry {
    PrefixProbs probs;
    bool stay_applied = false;
    bool extend_applied = false;
  };
  static uint64_t Key(PrefixId prefix, int t) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(prefix)) << 32) |
           static_cast<uint32_t>(t);
  }
  Entry& EntryFor(PrefixId prefix, int t);
  const Entry& Source(PrefixId prefix, int t, const FrameProbs& frames) const;

  PrefixTree tree_;
  std::unordered_map<uint64_t, Entry> entries_;
};

// Verification oracle: sums, over all (P+1)^t alignments of the first t
// frames, the probability of those that collapse (merge repeats, then drop
// blanks) to exactly `prefix`, split by whether the last frame is blank.
// Limited to t <= 8 and P <= 4. Returned in log space.
PrefixProbs BruteForcePrefixProb(const FrameProbs& frames,
                                 std::span<const Label> prefix, int t);

// Same enumeration, for every collapsed sequence at once (linear space).
struct CollapsedMass {
  std::vector<Label> sequence;
  double p_b = 0;
  double p_nb = 0;
};
std::vector<CollapsedMass> BruteForceCollapsed(const FrameProbs& frames, int t);

}  // namespace wsd

#endif  // WSDECODE_PREFIX_TABLE_H_
