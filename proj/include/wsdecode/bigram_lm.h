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

#ifndef WSDECODE_BIGRAM_LM_H_
#define WSDECODE_BIGRAM_LM_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsdecode/fst.h"

namespace wsd {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

using Sentence = std::vector<std::string>;
using Corpus = std::vector<Sentence>;

// One whitespace-tokenized sentence per line; empty lines are skipped.
Corpus ParseCorpus(std::string_view text);
Corpus ReadCorpus(const std::string& path);

// The `max_size` most frequent corpus tokens; ties broken lexicographically.
std::vector<std::string> SelectVocab(const Corpus& corpus, size_t max_size);

// Interpolated Kneser-Ney bigram model:
//   P(w|v) = max(c(v,w) - D, 0) / c(v) + lambda(v) * Pcont(w)
//   lambda(v) = D * N1+(v,.) / c(v)
//   Pcont(w) = N1+(.,w) / N1+(.,.)
// A context never seen in training falls back to P(w|v) = Pcont(w).
class BigramLm {
 public:
  const std::vector<std::string>& Vocab() const { return vocab_; }
  double Discount() const { return discount_; }

  // Tokens outside the vocabulary are read as <unk>.
  double Prob(std::string_view context, std::string_view word) const;
  double DiscountedProb(std::string_view context, std::string_view word) const;
  double Backoff(std::string_view context) const;
  double ContinuationProb(std::string_view word) const;
  double ContextCount(std::string_view context) const;

  // Natural-log probability of `words` between <s> and </s>.
  double SentenceLogProb(const Sentence& words) const;

  // Tokens that can be conditioned on: <s>, <unk>, then the vocabulary.
  std::vector<std::string> Contexts() const;
  // Tokens that can be predicted: <unk>, the vocabulary, then </s>.
  std::vector<std::string> Predictable() const;
  // Seen successors of `context` with their bigram counts, in token order.
  std::vector<std::pair<std::string, double>> Successors(
      std::string_view context) const;

 private:
  friend BigramLm TrainBigramKn(const Corpus&, const std::vector<std::string>&,
                                double);
  int Id(std::string_view token) const;
  const std::string& Token(int id) const { return tokens_[id]; }

  enum : int { kBosId = 0, kEosId = 1, kUnkId = 2 };
  std::vector<std::string> vocab_;
  std::vector<std::string> tokens_;  // <s>, </s>, <unk>, vocab...
  std::unordered_map<std::string, int> ids_;
  double discount_ = 0.75;
  std::vector<std::map<int, double>> bigram_counts_;  // per context
  std::vector<double> context_count_;
  std::vector<double> followers_;     // N1+(v, .)
  std::vector<double> predecessors_;  // N1+(., w)
  double bigram_types_ = 0;           // N1+(., .)
};

BigramLm TrainBigramKn(const Corpus& corpus,
                       const std::vector<std::string>& vocab,
                       double discount = 0.75);

// Backoff acceptor over words. One state per context plus a shared backoff
// state. Seen bigrams are explicit arcs carrying the full interpolated
// -log P(w|v); every context has an epsilon arc of weight -log lambda(v) to
// the backoff state, whose arcs carry -log Pcont(w). </s> is a final weight.
// Because the explicit arc always beats the backoff route, the lowest path
// weight of a sentence equals -log of its model probability.
WeightedFst LmToFst(const BigramLm& lm);

}  // namespace wsd

#endif  // WSDECODE_BIGRAM_LM_H_
