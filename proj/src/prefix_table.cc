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

#include "wsdecode/prefix_table.h"

#include <algorithm>

#include "wsdecode/error.h"

namespace wsd {

PrefixTree::PrefixTree() { nodes_.push_back({kEmptyPrefix, kEpsilon, 0}); }

PrefixId PrefixTree::Extend(PrefixId parent, Label phoneme) {
  const uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(parent)) << 32) |
                       static_cast<uint32_t>(phoneme);
  auto [it, inserted] = children_.try_emplace(key, 0);
  if (inserted) {
    it->second = static_cast<PrefixId>(nodes_.size());
    nodes_.push_back({parent, phoneme, nodes_[parent].length + 1});
  }
  return it->second;
}

std::vector<Label> PrefixTree::Sequence(PrefixId id) const {
  std::vector<Label> out(nodes_[id].length);
  for (auto i = out.size(); i > 0; --i) {
    out[i - 1] = nodes_[id].last;
    id = nodes_[id].parent;
  }
  return out;
}

PrefixId PrefixTree::Intern(std::span<const Label> phonemes) {
  PrefixId id = kEmptyPrefix;
  for (Label p : phonemes) id = Extend(id, p);
  return id;
}

PrefixTable::PrefixTable() {
  Entry root;
  root.probs = {0.0, kLogZero};
  root.stay_applied = root.extend_applied = true;
  entries_.emplace(Key(kEmptyPrefix, 0), root);
}

const PrefixProbs* PrefixTable::Find(PrefixId prefix, int t) const {
  auto it = entries_.find(Key(prefix, t));
  return it == entries_.end() ? nullptr : &it->second.probs;
}

double PrefixTable::PrefixLogProb(PrefixId prefix, int t) const {
  const PrefixProbs* p = Find(prefix, t);
  if (!p) {
    throw UsageError("prefix table: no entry for prefix " +
                     std::to_string(prefix) + " at t=" + std::to_string(t));
  }
  return p->LogTotal();
}

PrefixTable::Entry& PrefixTable::EntryFor(PrefixId prefix, int t) {
  return entries_[Key(prefix, t)];
}

const PrefixTable::Entry& PrefixTable::Source(PrefixId prefix, int t,
                                              const FrameProbs& frames) const {
  if (t + 1 > frames.NumFrames()) {
    throw UsageError("prefix table: cannot advance past the last frame");
  }
  auto it = entries_.find(Key(prefix, t));
  if (it == entries_.end()) {
    throw UsageError("prefix table: missing source entry for prefix " +
                     std::to_string(prefix) + " at t=" + std::to_string(t));
  }
  return it->second;
}

const PrefixProbs& PrefixTable::AdvanceStay(PrefixId prefix, int t,
                                            const FrameProbs& frames) {
  const PrefixProbs src = Source(prefix, t, frames).probs;
  Entry& dst = EntryFor(prefix, t + 1);
  if (!dst.stay_applied) {
    dst.probs.log_p_b = LogAdd(dst.probs.log_p_b,
                               frames.LogProb(t, kEpsilon) + src.LogTotal());
    if (prefix != kEmptyPrefix) {
      dst.probs.log_p_nb =
          LogAdd(dst.probs.log_p_nb,
                 frames.LogProb(t, tree_.Last(prefix)) + src.log_p_nb);
    }
    dst.stay_applied = true;
  }
  return dst.probs;
}

PrefixTable::Extended PrefixTable::AdvanceExtend(PrefixId prefix, Label phoneme,
                                                 int t, const FrameProbs& frames) {
  if (phoneme <= 0 || phoneme >= frames.Width()) {
    throw UsageError("prefix table: unknown phoneme id " + std::to_string(phoneme));
  }
  const PrefixProbs src = Source(prefix, t, frames).probs;
  const PrefixId child = tree_.Extend(prefix, phoneme);
  Entry& dst = EntryFor(child, t + 1);
  if (!dst.extend_applied) {
    const bool repeat = prefix != kEmptyPrefix && tree_.Last(prefix) == phoneme;
    const double mass = repeat ? src.log_p_b : src.LogTotal();
    dst.probs.log_p_nb =
        LogAdd(dst.probs.log_p_nb, frames.LogProb(t, phoneme) + mass);
    dst.extend_applied = true;
  }
  return {child, &dst.probs};
}

const PrefixProbs& PrefixTable::Complete(PrefixId prefix, int t,
                                         const FrameProbs& frames) {
  static const PrefixProbs kImpossible{};
  if (t > frames.NumFrames()) {
    throw UsageError("prefix table: t beyond the last frame");
  }
  if (tree_.Length(prefix) > t) return kImpossible;
  if (t == 0) return entries_.at(Key(kEmptyPrefix, 0)).probs;
  Entry& e = EntryFor(prefix, t);
  if (!e.stay_applied) {
    if (tree_.Length(prefix) <= t - 1) {
      Complete(prefix, t - 1, frames);
      AdvanceStay(prefix, t - 1, frames);
    } else {
      e.stay_applied = true;
    }
  }
  if (!e.extend_applied) {
    if (prefix != kEmptyPrefix) {
      const PrefixId parent = tree_.Parent(prefix);
      Complete(parent, t - 1, frames);
      AdvanceExtend(parent, tree_.Last(prefix), t - 1, frames);
    } else {
      e.extend_applied = true;
    }
  }
  return e.probs;
}

void PrefixTable::Retain(std::span<const PrefixId> keep) {
  const int32_t n = tree_.Size();
  std::vector<uint8_t> related(n, 0);
  for (PrefixId k : keep) {
    for (PrefixId a = k; !related[a]; a = tree_.Parent(a)) {
      related[a] = 1;
      if (a == kEmptyPrefix) break;
    }
  }
  // Children always have larger ids than their parents.
  std::vector<uint8_t> below(n, 0);
  std::vector<uint8_t> kept(n, 0);
  for (PrefixId k : keep) kept[k] = 1;
  for (PrefixId id = 0; id < n; ++id) {
    below[id] = kept[id] || (id != kEmptyPrefix && below[tree_.Parent(id)]);
  }
  std::erase_if(entries_, [&](const auto& kv) {
    const auto prefix = static_cast<PrefixId>(kv.first >> 32);
    return !related[prefix] && !below[prefix];
  });
}

}  // namespace wsd
