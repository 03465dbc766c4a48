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

#include "wsdecode/compose.h"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>

#include "wsdecode/error.h"
#include "wsdecode/log_math.h"

namespace wsd {

namespace {

struct GrammarReach {
  StateId state;
  double weight;
};

// Shortest epsilon distances inside G from one state (Bellman-Ford style
// relaxation; G has no epsilon cycles after Validate()).
std::vector<GrammarReach> GrammarClosure(const WeightedFst& g, StateId from) {
  std::map<StateId, double> dist{{from, 0.0}};
  std::vector<StateId> work{from};
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    const double d = dist[s];
    for (const Arc& a : g.Arcs(s)) {
      if (a.ilabel != kEpsilon) continue;
      auto it = dist.find(a.next);
      if (it != dist.end() && it->second <= d + a.weight) continue;
      dist[a.next] = d + a.weight;
      work.push_back(a.next);
    }
  }
  std::vector<GrammarReach> out;
  for (auto [s, d] : dist) out.push_back({s, d});
  return out;
}

}  // namespace

WeightedFst ComposeDecoder(const WeightedFst& lexicon,
                           const WeightedFst& unsorted_grammar) {
  if (lexicon.IsWordAcceptor()) {
    throw UsageError("ComposeDecoder: left operand must be a lexicon");
  }
  if (!unsorted_grammar.IsWordAcceptor()) {
    throw UsageError("ComposeDecoder: right operand must be a word acceptor");
  }
  unsorted_grammar.Validate();
  WeightedFst grammar = unsorted_grammar;
  grammar.SortArcs();

  // L word id -> G word id.
  std::vector<Label> word_map(lexicon.Words().Size(), kEpsilon);
  for (Label w = 1; w < lexicon.Words().Size(); ++w) {
    auto id = grammar.Words().Find(lexicon.Words().Symbol(w));
    if (!id) {
      throw DataError("lexicon word '" + lexicon.Words().Symbol(w) +
                      "' is not in the language model vocabulary");
    }
    word_map[w] = *id;
  }

  // Per G state: ilabel -> outgoing word arcs, looked up through the
  // epsilon closure once per state.
  std::vector<std::vector<GrammarReach>> closure(grammar.NumStates());
  std::vector<char> have_closure(grammar.NumStates(), 0);
  const auto closure_of = [&](StateId g) -> const std::vector<GrammarReach>& {
    if (!have_closure[g]) {
      closure[g] = GrammarClosure(grammar, g);
      have_closure[g] = 1;
    }
    return closure[g];
  };

  WeightedFst out(lexicon.Phonemes(), grammar.Words());
  std::unordered_map<uint64_t, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  const auto state_of = [&](StateId l, StateId g) {
    const uint64_t key = (static_cast<uint64_t>(l) << 32) | static_cast<uint32_t>(g);
    auto [it, inserted] = ids.try_emplace(key, kNoState);
    if (inserted) {
      it->second = out.AddState();
      queue.emplace_back(l, g);
      if (lexicon.IsWordBoundary(l)) out.MarkWordBoundary(it->second);
    }
    return it->second;
  };
  out.SetStart(state_of(lexicon.Start(), grammar.Start()));

  struct Pending {
    Label ilabel, olabel;
    StateId next;
    double weight;
  };
  std::vector<Pending> pending;
  while (!queue.empty()) {
    const auto [l, g] = queue.front();
    queue.pop_front();
    const StateId self = ids.at((static_cast<uint64_t>(l) << 32) | static_cast<uint32_t>(g));

    if (auto lf = lexicon.Final(l)) {
      std::optional<double> best;
      for (const auto& r : closure_of(g)) {
        if (auto gf = grammar.Final(r.state)) {
          const double w = r.weight + *gf;
          if (!best || w < *best) best = w;
        }
      }
      if (best) out.SetFinal(self, *lf + *best);
    }

    pending.clear();
    for (const Arc& a : lexicon.Arcs(l)) {
      if (a.olabel == kEpsilon) {
        pending.push_back({a.ilabel, kEpsilon, state_of(a.next, g), a.weight});
        continue;
      }
      const Label word = word_map[a.olabel];
      for (const auto& r : closure_of(g)) {
        const auto arcs = grammar.Arcs(r.state);
        auto lo = std::lower_bound(
            arcs.begin(), arcs.end(), word,
            [](const Arc& x, Label w) { return x.ilabel < w; });
        for (; lo != arcs.end() && lo->ilabel == word; ++lo) {
          pending.push_back({a.ilabel, word, state_of(a.next, lo->next),
                             a.weight + r.weight + lo->weight});
        }
      }
    }
    std::sort(pending.begin(), pending.end(), [](const Pending& x, const Pending& y) {
      return std::tie(x.ilabel, x.olabel, x.next, x.weight) <
             std::tie(y.ilabel, y.olabel, y.next, y.weight);
    });
    for (size_t i = 0; i < pending.size(); ++i) {
      const Pending& p = pending[i];
      if (i > 0 && pending[i - 1].ilabel == p.ilabel &&
          pending[i - 1].olabel == p.olabel && pending[i - 1].next == p.next) {
        continue;  // a cheaper parallel arc was already kept
      }
      out.AddArc(self, {p.ilabel, p.olabel, p.weight, p.next});
    }
  }
  return out;
}

}  // namespace wsd
