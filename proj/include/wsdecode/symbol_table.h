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

#ifndef WSDECODE_SYMBOL_TABLE_H_
#define WSDECODE_SYMBOL_TABLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsd {

using Label = int32_t;
inline constexpr Label kEpsilon = 0;

// Dense string <-> id map. Id 0 is reserved for the epsilon / blank slot,
// so real symbols are numbered from 1.
class SymbolTable {
 public:
  explicit SymbolTable(std::string reserved = "<eps>");

  // Returns the id of `symbol`, adding it if it is new.
  Label Add(std::string_view symbol);
  std::optional<Label> Find(std::string_view symbol) const;
  const std::string& Symbol(Label id) const;

  // Number of ids including the reserved slot 0.
  int32_t Size() const { return static_cast<int32_t>(symbols_.size()); }
  // Real symbols only, in id order.
  std::vector<std::string> Symbols() const;

  bool operator==(const SymbolTable& other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

// Phoneme inventory: ids 1..P are phonemes, slot 0 is the CTC blank when
// indexing frame posteriors and epsilon when labelling FST arcs.
class PhonemeInventory {
 public:
  PhonemeInventory() : table_("<blank>") {}
  explicit PhonemeInventory(const std::vector<std::string>& phonemes);

  // The 39-symbol ARPAbet set used by CMU-style dictionaries.
  static PhonemeInventory Arpabet();

  std::optional<Label> Find(std::string_view phoneme) const {
    return table_.Find(phoneme);
  }
  const std::string& Symbol(Label id) const { return table_.Symbol(id); }
  int32_t NumPhonemes() const { return table_.Size() - 1; }
  std::vector<std::string> Symbols() const { return table_.Symbols(); }

  bool operator==(const PhonemeInventory& other) const {
    return table_ == other.table_;
  }

 private:
  SymbolTable table_;
};

}  // namespace wsd

#endif  // WSDECODE_SYMBOL_TABLE_H_
