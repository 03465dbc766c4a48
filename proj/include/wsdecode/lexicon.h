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

#ifndef WSDECODE_LEXICON_H_
#define WSDECODE_LEXICON_H_

#include <string>
#include <string_view>
#include <vector>

#include "wsdecode/fst.h"
#include "wsdecode/symbol_table.h"

namespace wsd {

struct LexiconEntry {
  std::string word;
  std::vector<std::string> pronunciation;
  double pron_weight = 0.0;  // negative log; 0 for a sole pronunciation

  bool operator==(const LexiconEntry&) const = default;
};

// Parses `WORD<TAB>PH1 PH2 ...[<TAB>weight]` lines. Blank lines and lines
// starting with '#' are skipped. Duplicate (word, pronunciation) pairs are
// collapsed, keeping the lowest weight; first-seen order is preserved.
std::vector<LexiconEntry> ParseLexicon(std::string_view text,
                                       const PhonemeInventory& inventory);
std::vector<LexiconEntry> ReadLexicon(const std::string& path,
                                      const PhonemeInventory& inventory);

// Builds L. Pronunciations share a phoneme prefix tree; the last phoneme of
// each entry is a separate arc emitting the word (carrying pron_weight) into
// a fresh word-boundary state, which returns to the start by an epsilon arc.
// Homophones therefore become parallel arcs, one accepting path per entry.
WeightedFst BuildLexiconFst(const std::vector<LexiconEntry>& entries,
                            const PhonemeInventory& inventory);

}  // namespace wsd

#endif  // WSDECODE_LEXICON_H_
