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

#include "wsdecode/symbol_table.h"

#include "wsdecode/error.h"

namespace wsd {

SymbolTable::SymbolTable(std::string reserved) {
  symbols_.push_back(std::move(reserved));
}

Label SymbolTable::Add(std::string_view symbol) {
  auto it = ids_.find(std::string(symbol));
  if (it != ids_.end()) return it->second;
  Label id = static_cast<Label>(symbols_.size());
  symbols_.emplace_back(symbol);
  ids_.emplace(symbols_.back(), id);
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::Symbol(Label id) const {
  if (id < 0 || id >= Size()) {
    throw UsageError("symbol id out of range: " + std::to_string(id));
  }
  return symbols_[id];
}

std::vector<std::string> SymbolTable::Symbols() const {
  return {symbols_.begin() + 1, symbols_.end()};
}

PhonemeInventory::PhonemeInventory(const std::vector<std::string>& phonemes)
    : table_("<blank>") {
  for (const auto& p : phonemes) {
    if (p.empty() || table_.Find(p)) {
      throw DataError("phoneme inventory has an empty or repeated symbol: '" +
                      p + "'");
    }
    table_.Add(p);
  }
}

PhonemeInventory PhonemeInventory::Arpabet() {
  return PhonemeInventory({"AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH",
                           "D",  "DH", "EH", "ER", "EY", "F",  "G",  "HH",
                           "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG",
                           "OW", "OY", "P",  "R",  "S",  "SH", "T",  "TH",
                           "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"});
}

}  // namespace wsd
