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

#include "wsdecode/lexicon.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wsdecode/error.h"

namespace wsd {

namespace {

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<LexiconEntry> ParseLexicon(std::string_view text,
                                       const PhonemeInventory& inventory) {
  std::vector<LexiconEntry> entries;
  std::map<std::pair<std::string, std::vector<std::string>>, size_t> seen;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;

    const std::string where = "lexicon line " + std::to_string(line_no);
    std::vector<std::string_view> fields;
    size_t f = 0;
    while (true) {
      size_t tab = line.find('\t', f);
      fields.push_back(line.substr(f, tab == std::string_view::npos
                                          ? std::string_view::npos
                                          : tab - f));
      if (tab == std::string_view::npos) break;
      f = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw DataError(where + ": expected WORD<TAB>PHONEMES[<TAB>weight]");
    }
    LexiconEntry entry;
    entry.word = std::string(Trim(fields[0]));
    if (entry.word.empty() ||
        entry.word.find_first_of(" \t") != std::string::npos) {
      throw DataError(where + ": empty or multi-token word");
    }
    entry.pronunciation = SplitWhitespace(fields[1]);
    if (entry.pronunciation.empty()) {
      throw DataError(where + ": empty pronunciation for '" + entry.word + "'");
    }
    for (const auto& ph : entry.pronunciation) {
      if (!inventory.Find(ph)) {
        throw DataError(where + ": unknown phoneme '" + ph + "' in entry '" +
                        entry.word + "'");
      }
    }
    if (fields.size() == 3) {
      const std::string w(Trim(fields[2]));
      try {
        size_t used = 0;
        entry.pron_weight = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw DataError(where + ": bad weight '" + w + "'");
      }
      if (!std::isfinite(entry.pron_weight) || entry.pron_weight < 0) {
        throw DataError(where + ": weight must be finite and >= 0");
      }
    }
    auto key = std::make_pair(entry.word, entry.pronunciation);
    auto it = seen.find(key);
    if (it != seen.end()) {
      auto& kept = entries[it->second];
      kept.pron_weight = std::min(kept.pron_weight, entry.pron_weight);
      continue;
    }
    seen.emplace(std::move(key), entries.size());
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<LexiconEntry> ReadLexicon(const std::string& path,
                                      const PhonemeInventory& inventory) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open lexicon: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseLexicon(ss.str(), inventory);
}

WeightedFst BuildLexiconFst(const std::vector<LexiconEntry>& entries,
                            const PhonemeInventory& inventory) {
  if (entries.empty()) throw UsageError("BuildLexiconFst: empty lexicon");
  SymbolTable words;
  for (const auto& e : entries) words.Add(e.word);
  WeightedFst fst(inventory, std::move(words));
  const StateId start = fst.AddState();
  fst.SetStart(start);
  fst.SetFinal(start, 0.0);

  std::map<std::pair<StateId, Label>, StateId> trie;
  for (const auto& e : entries) {
    if (e.pronunciation.empty()) {
      throw UsageError("BuildLexiconFst: empty pronunciation for '" + e.word +
                       "'");
    }
    std::vector<Label> phones;
    for (const auto& ph : e.pronunciation) {
      auto id = inventory.Find(ph);
      if (!id) {
        throw DataError("lexicon entry '" + e.word + "': unknown phoneme '" +
                        ph + "'");
      }
      phones.push_back(*id);
    }
    StateId node = start;
    for (size_t i = 0; i + 1 < phones.size(); ++i) {
      auto [it, inserted] = trie.try_emplace({node, phones[i]}, kNoState);
      if (inserted) {
        it->second = fst.AddState();
        fst.AddArc(node, {phones[i], kEpsilon, 0.0, it->second});
      }
      node = it->second;
    }
    const StateId boundary = fst.AddState();
    fst.MarkWordBoundary(boundary);
    fst.AddArc(node, {phones.back(), *fst.Words().Find(e.word), e.pron_weight,
                      boundary});
    fst.AddArc(boundary, {kEpsilon, kEpsilon, 0.0, start});
  }
  return fst;
}

}  // namespace wsd
