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

#include "wsdecode/search.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "wsdecode/error.h"

namespace wsd {

double Score(const SearchState& state, const PrefixTable& table) {
  return -table.PrefixLogProb(state.prefix, state.t) + state.path_weight;
}

bool StateLess(const SearchState& a, double score_a, const SearchState& b,
               double score_b) {
  return std::tie(score_a, a.prefix, a.fst_state, a.t, a.words, a.frozen) <
         std::tie(score_b, b.prefix, b.fst_state, b.t, b.words, b.frozen);
}

std::vector<SearchState> GenerateChildren(const std::vector<SearchState>& fringe,
                                          PrefixTable& table,
                                          const FrameProbs& frames,
                                          const WeightedFst& fst,
                                          const DecoderConfig& config) {
  using Key = std::tuple<PrefixId, int, StateId, std::vector<Label>>;
  std::map<Key, size_t> index;
  std::vector<SearchState> children;
  const auto add = [&](SearchState s) {
    Key key{s.prefix, s.t, s.fst_state, s.words};
    auto [it, inserted] = index.try_emplace(std::move(key), children.size());
    if (inserted) {
      children.push_back(std::move(s));
    } else if (s.path_weight < children[it->second].path_weight) {
      children[it->second].path_weight = s.path_weight;
    }
  };

  std::map<std::pair<StateId, Label>, std::vector<FeedResult>> feed_cache;
  const int num_phonemes = frames.Width() - 1;
  for (const SearchState& s : fringe) {
    if (s.frozen) {
      add(s);
      continue;
    }
    if (s.t >= frames.NumFrames()) {
      throw UsageError("ExpandFringe: non-frozen state already at the last frame");
    }
    const int next_t = s.t + 1;
    SearchState stay = s;
    stay.t = next_t;
    table.Complete(stay.prefix, next_t, frames);
    add(std::move(stay));

    for (Label p = 1; p <= num_phonemes; ++p) {
      if (!(frames.LogProb(s.t, p) > config.phoneme_floor)) continue;
      auto [it, inserted] = feed_cache.try_emplace({s.fst_state, p});
      if (inserted) {
        it->second = FeedSymbol(fst, s.fst_state, p,
                                static_cast<size_t>(config.fst_branch_cap));
      }
      const auto& outcomes = it->second;
      if (outcomes.empty()) continue;  // dead end
      const PrefixId extended = table.Tree().Extend(s.prefix, p);
      table.Complete(extended, next_t, frames);
      for (const FeedResult& r : outcomes) {
        SearchState child;
        child.prefix = extended;
        child.t = next_t;
        child.fst_state = r.state;
        child.words = s.words;
        child.words.insert(child.words.end(), r.words.begin(), r.words.end());
        child.path_weight = s.path_weight + r.weight;
        child.frozen = fst.IsWordBoundary(r.state);
        add(std::move(child));
      }
    }
  }
  std::erase_if(children, [&](const SearchState& c) {
    return table.PrefixLogProb(c.prefix, c.t) == kLogZero;
  });
  return children;
}

std::vector<SearchState> PruneToBeam(std::vector<SearchState> states,
                                     const PrefixTable& table, int beam_width) {
  std::vector<double> scores(states.size());
  for (size_t i = 0; i < states.size(); ++i) scores[i] = Score(states[i], table);
  std::vector<size_t> order(states.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return StateLess(states[a], scores[a], states[b], scores[b]);
  });
  if (order.size() > static_cast<size_t>(beam_width)) order.resize(beam_width);
  std::vector<SearchState> out;
  out.reserve(order.size());
  for (size_t i : order) out.push_back(std::move(states[i]));
  return out;
}

std::vector<SearchState> ExpandFringe(const std::vector<SearchState>& fringe,
                                      PrefixTable& table,
                                      const FrameProbs& frames,
                                      const WeightedFst& fst,
                                      const DecoderConfig& config) {
  if (std::none_of(fringe.begin(), fringe.end(),
                   [](const SearchState& s) { return !s.frozen; })) {
    throw UsageError("ExpandFringe: no non-frozen state to expand");
  }
  return PruneToBeam(GenerateChildren(fringe, table, frames, fst, config),
                     table, config.beam_width);
}

std::vector<Candidate> BuildCandidates(const std::vector<SearchState>& fringe,
                                       const PrefixTable& table,
                                       const SymbolTable& words, int cap) {
  std::map<Label, Candidate> by_word;
  for (size_t i = 0; i < fringe.size(); ++i) {
    const SearchState& s = fringe[i];
    if (!s.frozen || s.words.empty()) {
      throw UsageError("BuildCandidates: every fringe state must be frozen");
    }
    const double score = Score(s, table);
    auto [it, inserted] = by_word.try_emplace(s.words.back());
    Candidate& c = it->second;
    if (inserted) {
      c.word = s.words.back();
      c.text = words.Symbol(c.word);
      c.score = score;
    } else {
      c.score = std::min(c.score, score);
    }
    c.support.push_back(i);
  }
  std::vector<Candidate> out;
  out.reserve(by_word.size());
  for (auto& [w, c] : by_word) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.score, a.text) < std::tie(b.score, b.text);
  });
  if (out.size() > static_cast<size_t>(cap)) out.resize(cap);
  for (size_t r = 0; r < out.size(); ++r) out[r].rank = static_cast<int>(r);
  return out;
}

std::vector<SearchState> SelectWord(const std::vector<SearchState>& fringe,
                                    Label word) {
  std::vector<SearchState> out;
  for (const SearchState& s : fringe) {
    if (!s.words.empty() && s.words.back() == word) {
      out.push_back(s);
      out.back().frozen = false;
    }
  }
  if (out.empty()) throw UsageError("SelectWord: word is not in the fringe");
  return out;
}

bool AutoAcceptGap(const std::vector<Candidate>& candidates, double threshold) {
  if (candidates.empty()) throw UsageError("AutoAcceptGap: no candidates");
  if (candidates.size() == 1) return true;
  return candidates[1].score - candidates[0].score >= threshold;
}

}  // namespace wsd
