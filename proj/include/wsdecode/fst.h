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

#ifndef WSDECODE_FST_H_
#define WSDECODE_FST_H_

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "wsdecode/symbol_table.h"

namespace wsd {

using StateId = int32_t;
inline constexpr StateId kNoState = -1;

// Weights are negative natural-log probabilities; a path's weight is the sum
// of its arc weights (plus the final weight when it ends).
struct Arc {
  Label ilabel = kEpsilon;  // phoneme id, or epsilon
  Label olabel = kEpsilon;  // word id, or epsilon
  double weight = 0.0;
  StateId next = kNoState;

  bool operator==(const Arc&) const = default;
};

// Mutable weighted transducer with phoneme input labels and word output
// labels. Besides the usual start/final structure it records the set of
// word-boundary states: states entered exactly when one complete word has
// just been emitted. The interactive decoder freezes search states there.
class WeightedFst {
 public:
  WeightedFst() = default;
  WeightedFst(PhonemeInventory phonemes, SymbolTable words)
      : phonemes_(std::move(phonemes)), words_(std::move(words)) {}

  // A word acceptor (such as a language model graph) labels both sides of
  // its arcs with word ids and has no phoneme inventory.
  static WeightedFst WordAcceptor(SymbolTable words) {
    WeightedFst fst({}, std::move(words));
    fst.word_input_ = true;
    return fst;
  }
  bool IsWordAcceptor() const { return word_input_; }

  StateId AddState();
  void SetStart(StateId s);
  void AddArc(StateId s, const Arc& arc);
  void SetFinal(StateId s, double weight);
  void MarkWordBoundary(StateId s);

  StateId Start() const { return start_; }
  int32_t NumStates() const { return static_cast<int32_t>(arcs_.size()); }
  size_t NumArcs() const;
  std::span<const Arc> Arcs(StateId s) const { return arcs_[s]; }
  std::optional<double> Final(StateId s) const;
  bool IsWordBoundary(StateId s) const { return word_boundary_[s] != 0; }
  std::vector<StateId> WordBoundaryStates() const;

  const PhonemeInventory& Phonemes() const { return phonemes_; }
  const SymbolTable& Words() const { return words_; }
  SymbolTable& MutableWords() { return words_; }

  // Sorts each state's arcs by (ilabel, olabel, next, weight).
  void SortArcs();

  // Throws DataError if the structural invariants do not hold: valid start,
  // arc targets in range, finite weights, non-negative weights on arcs that
  // consume a phoneme, and no epsilon-input cycle.
  void Validate() const;

  // Canonical text form; the interchange format. Weights are written in
  // shortest round-trip form so Read(Write(f)) is bit-exact.
  void WriteText(std::ostream& os) const;
  static WeightedFst ReadText(std::istream& is);
  void Write(const std::string& path) const;
  static WeightedFst Read(const std::string& path);

  bool operator==(const WeightedFst& other) const;

 private:
  PhonemeInventory phonemes_;
  SymbolTable words_;
  bool word_input_ = false;
  StateId start_ = kNoState;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<double> final_;  // +inf when not final
  std::vector<uint8_t> word_boundary_;
};

// One outcome of feeding a phoneme into the graph.
struct FeedResult {
  StateId state = kNoState;
  std::vector<Label> words;  // output labels emitted on the way
  double weight = 0.0;

  bool operator==(const FeedResult&) const = default;
};

inline constexpr size_t kUnbounded = std::numeric_limits<size_t>::max();

// Consumes exactly one `phoneme` from `state`. Epsilon-input arcs are followed
// before the phoneme (so a word-boundary source can leave its word) and after
// it, stopping at word-boundary states. Outcomes with the same (state, words)
// keep the lowest weight. The result is ordered by weight, then state, then
// words, and holds at most `max_states` entries. An empty result is a dead end.
std::vector<FeedResult> FeedSymbol(const WeightedFst& fst, StateId state,
                                   Label phoneme,
                                   size_t max_states = kUnbounded);

// Lowest total weight of finishing from `state`: epsilon moves followed by a
// final weight. nullopt when no final state is epsilon-reachable.
std::optional<double> FinalWeightFrom(const WeightedFst& fst, StateId state);

}  // namespace wsd

#endif  // WSDECODE_FST_H_
