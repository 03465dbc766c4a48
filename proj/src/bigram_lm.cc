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

#include "wsdecode/bigram_lm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wsdecode/error.h"

namespace wsd {

Corpus ParseCorpus(std::string_view text) {
  Corpus corpus;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    Sentence s;
    std::string tok;
    while (ls >> tok) s.push_back(tok);
    if (!s.empty()) corpus.push_back(std::move(s));
  }
  return corpus;
}

Corpus ReadCorpus(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open corpus: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseCorpus(ss.str());
}

std::vector<std::string> SelectVocab(const Corpus& corpus, size_t max_size) {
  std::unordered_map<std::string, size_t> freq;
  for (const auto& s : corpus) {
    for (const auto& w : s) {
      if (w == kBos || w == kEos || w == kUnk) continue;
      ++freq[w];
    }
  }
  std::vector<std::pair<std::string, size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_size) ranked.resize(max_size);
  std::vector<std::string> vocab;
  for (auto& [w, n] : ranked) vocab.push_back(w);
  return vocab;
}

int BigramLm::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkId : it->second;
}

double BigramLm::DiscountedProb(std::string_view context,
                                std::string_view word) const {
  const int v = Id(context), w = Id(word);
  if (context_count_[v] == 0) return 0.0;
  auto it = bigram_counts_[v].find(w);
  if (it == bigram_counts_[v].end()) return 0.0;
  return std::max(it->second - discount_, 0.0) / context_count_[v];
}

double BigramLm::Backoff(std::string_view context) const {
  const int v = Id(context);
  if (context_count_[v] == 0) return 1.0;
  return discount_ * followers_[v] / context_count_[v];
}

double BigramLm::ContinuationProb(std::string_view word) const {
  return predecessors_[Id(word)] / bigram_types_;
}

double BigramLm::ContextCount(std::string_view context) const {
  return context_count_[Id(context)];
}

double BigramLm::Prob(std::string_view context, std::string_view word) const {
  return DiscountedProb(context, word) +
         Backoff(context) * ContinuationProb(word);
}

double BigramLm::SentenceLogProb(const Sentence& words) const {
  double lp = 0;
  std::string_view prev = kBos;
  for (const auto& w : words) {
    lp += std::log(Prob(prev, w));
    prev = w;
  }
  return lp + std::log(Prob(prev, kEos));
}

std::vector<std::string> BigramLm::Contexts() const {
  std::vector<std::string> out{std::string(kBos), std::string(kUnk)};
  out.insert(out.end(), vocab_.begin(), vocab_.end());
  return out;
}

std::vector<std::string> BigramLm::Predictable() const {
  std::vector<std::string> out{std::string(kUnk)};
  out.insert(out.end(), vocab_.begin(), vocab_.end());
  out.emplace_back(kEos);
  return out;
}

std::vector<std::pair<std::string, double>> BigramLm::Successors(
    std::string_view context) const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [w, c] : bigram_counts_[Id(context)]) {
    out.emplace_back(tokens_[w], c);
  }
  return out;
}

BigramLm TrainBigramKn(const Corpus& corpus,
                       const std::vector<std::string>& vocab,
                       double discount) {
  if (!(discount > 0 && discount < 1)) {
    throw UsageError("Kneser-Ney discount must lie in (0, 1)");
  }
  if (corpus.empty()) throw DataError("cannot train a language model on an empty corpus");
  BigramLm lm;
  lm.discount_ = discount;
  lm.tokens_ = {std::string(kBos), std::string(kEos), std::string(kUnk)};
  for (int i = 0; i < 3; ++i) lm.ids_.emplace(lm.tokens_[i], i);
  for (const auto& w : vocab) {
    if (w == kBos || w == kEos || w == kUnk) continue;
    if (lm.ids_.count(w)) continue;
    lm.ids_.emplace(w, static_cast<int>(lm.tokens_.size()));
    lm.tokens_.push_back(w);
    lm.vocab_.push_back(w);
  }
  const size_t n = lm.tokens_.size();
  lm.bigram_counts_.assign(n, {});
  lm.context_count_.assign(n, 0);
  lm.followers_.assign(n, 0);
  lm.predecessors_.assign(n, 0);

  for (const auto& sentence : corpus) {
    int prev = BigramLm::kBosId;
    for (const auto& tok : sentence) {
      if (tok == kBos || tok == kEos) {
        throw DataError("corpus contains a reserved token: " + tok);
      }
      const int cur = lm.Id(tok);
      lm.bigram_counts_[prev][cur] += 1;
      prev = cur;
    }
    lm.bigram_counts_[prev][BigramLm::kEosId] += 1;
  }
  for (size_t v = 0; v < n; ++v) {
    for (const auto& [w, c] : lm.bigram_counts_[v]) {
      lm.context_count_[v] += c;
      lm.followers_[v] += 1;
      lm.predecessors_[w] += 1;
      lm.bigram_types_ += 1;
    }
  }
  return lm;
}

WeightedFst LmToFst(const BigramLm& lm) {
  SymbolTable words;
  for (const auto& w : lm.Predictable()) {
    if (w != kEos) words.Add(w);
  }
  WeightedFst g = WeightedFst::WordAcceptor(std::move(words));
  const auto contexts = lm.Contexts();
  std::unordered_map<std::string, StateId> state_of;
  for (const auto& c : contexts) state_of[c] = g.AddState();
  const StateId backoff = g.AddState();
  g.SetStart(state_of.at(std::string(kBos)));

  for (const auto& v : contexts) {
    const StateId s = state_of.at(v);
    for (const auto& [w, count] : lm.Successors(v)) {
      if (w == kEos) continue;
      const Label label = *g.Words().Find(w);
      g.AddArc(s, {label, label, -std::log(lm.Prob(v, w)), state_of.at(w)});
    }
    const double lambda = lm.Backoff(v);
    if (lambda > 0) g.AddArc(s, {kEpsilon, kEpsilon, -std::log(lambda), backoff});
    const double p_end = lm.Prob(v, kEos);
    if (p_end > 0) g.SetFinal(s, -std::log(p_end));
  }
  for (const auto& w : lm.Predictable()) {
    if (w == kEos) continue;
    const double p = lm.ContinuationProb(w);
    if (p <= 0) continue;
    const Label label = *g.Words().Find(w);
    g.AddArc(backoff, {label, label, -std::log(p), state_of.at(w)});
  }
  g.SortArcs();
  return g;
}

}  // namespace wsd
