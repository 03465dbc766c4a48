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

#include <gtest/gtest.h>

#include "test_util.h"
#include "wsdecode/error.h"

namespace wsd {
namespace {

const PhonemeInventory& Arpa() {
  static const PhonemeInventory inv = PhonemeInventory::Arpabet();
  return inv;
}

// Lowest weight of a complete composed path whose output is exactly `words`.
double ComposedWeight(const WeightedFst& c, const std::vector<std::string>& words) {
  const std::vector<Label> ids = testing::WordIds(c.Words(), words);
  using Key = std::pair<StateId, size_t>;
  std::map<Key, double> best{{{c.Start(), 0}, 0.0}};
  std::priority_queue<std::pair<double, Key>, std::vector<std::pair<double, Key>>,
                      std::greater<>>
      queue;
  queue.push({0.0, {c.Start(), 0}});
  double result = INFINITY;
  while (!queue.empty()) {
    auto [w, key] = queue.top();
    queue.pop();
    if (w > best[key]) continue;
    if (key.second == ids.size()) {
      if (auto f = c.Final(key.first)) result = std::min(result, w + *f);
    }
    for (const Arc& a : c.Arcs(key.first)) {
      size_t pos = key.second;
      if (a.olabel != kEpsilon) {
        if (pos == ids.size() || a.olabel != ids[pos]) continue;
        ++pos;
      }
      const Key next{a.next, pos};
      const double nw = w + a.weight;
      auto it = best.find(next);
      if (it == best.end() || nw < it->second) {
        best[next] = nw;
        queue.push({nw, next});
      }
    }
  }
  return result;
}

TEST(Compose, SingleWordAddsPronunciationAndLmWeights) {
  const auto entries = ParseLexicon("CAT\tK AE T\t0.25\n", Arpa());
  const BigramLm lm = TrainBigramKn({{"CAT"}}, {"CAT"});
  const WeightedFst c = ComposeDecoder(BuildLexiconFst(entries, Arpa()), LmToFst(lm));
  c.Validate();
  const double lm_weight = -lm.SentenceLogProb({"CAT"});
  EXPECT_NEAR(ComposedWeight(c, {"CAT"}), 0.25 + lm_weight, 1e-12);
}

TEST(Compose, HomophonesDifferOnlyInWordAndLmWeight) {
  const auto entries = ParseLexicon("SEE\tS IY\nSEA\tS IY\n", Arpa());
  const BigramLm lm =
      TrainBigramKn({{"SEE"}, {"SEE", "SEA"}, {"SEA", "SEE"}, {"SEE"}}, {"SEE", "SEA"});
  const WeightedFst c = ComposeDecoder(BuildLexiconFst(entries, Arpa()), LmToFst(lm));
  // Walk S, IY from the start; both words must appear with their own weights.
  const auto after_s = FeedSymbol(c, c.Start(), *Arpa().Find("S"));
  ASSERT_EQ(after_s.size(), 1u);
  const auto done = FeedSymbol(c, after_s[0].state, *Arpa().Find("IY"));
  ASSERT_EQ(done.size(), 2u);
  for (const auto& r : done) {
    ASSERT_EQ(r.words.size(), 1u);
    const std::string& w = c.Words().Symbol(r.words[0]);
    EXPECT_TRUE(c.IsWordBoundary(r.state));
    EXPECT_NEAR(after_s[0].weight + r.weight, -std::log(lm.Prob(kBos, w)), 1e-12) << w;
  }
  EXPECT_NE(done[0].weight, done[1].weight);
}

TEST(Compose, BruteForceOverAllShortSequences) {
  const std::string text =
      "A\tAH\nAT\tAE T\nTAT\tT AE T\nTAT\tT AH T\t0.4\nTOT\tT AH T\t0.1\nAH\tAH\n";
  const auto entries = ParseLexicon(text, Arpa());
  const std::vector<std::string> vocab = {"A", "AT", "TAT", "TOT", "AH"};
  const Corpus corpus = {{"A", "TAT"}, {"TAT", "AT", "A"}, {"TOT"}, {"AH", "A", "A"},
                         {"TAT", "TOT"}};
  const BigramLm lm = TrainBigramKn(corpus, vocab);
  const WeightedFst g = LmToFst(lm);
  const WeightedFst c = ComposeDecoder(BuildLexiconFst(entries, Arpa()), g);
  c.Validate();
  std::map<std::string, double> best_pron;
  for (const auto& e : entries) {
    auto it = best_pron.find(e.word);
    if (it == best_pron.end() || e.pron_weight < it->second) best_pron[e.word] = e.pron_weight;
  }
  std::vector<std::vector<std::string>> sequences = {{}};
  for (int len = 0; len < 3; ++len) {
    const size_t n = sequences.size();
    for (size_t i = 0; i < n; ++i) {
      if (static_cast<int>(sequences[i].size()) != len) continue;
      for (const auto& w : vocab) {
        auto s = sequences[i];
        s.push_back(w);
        sequences.push_back(s);
      }
    }
  }
  ASSERT_EQ(sequences.size(), 1u + 5 + 25 + 125);
  for (const auto& seq : sequences) {
    double expected = testing::AcceptorWeight(g, testing::WordIds(g.Words(), seq));
    for (const auto& w : seq) expected += best_pron[w];
    EXPECT_NEAR(ComposedWeight(c, seq), expected, 1e-9) << ::testing::PrintToString(seq);
  }
}

TEST(Compose, WordBoundariesComeFromLexicon) {
  const auto p = testing::MakePipeline(testing::DataLexicon(), testing::DataCorpus(), 40);
  // Every arc that emits a word lands on a boundary, and no other arc does.
  for (StateId s = 0; s < p.graph.NumStates(); ++s) {
    for (const Arc& a : p.graph.Arcs(s)) {
      if (a.ilabel != kEpsilon) {
        EXPECT_EQ(a.olabel != kEpsilon, p.graph.IsWordBoundary(a.next));
      }
    }
  }
}

TEST(Compose, MissingWordIsAlphabetMismatch) {
  const auto entries = ParseLexicon("CAT\tK AE T\nDOG\tD AO G\n", Arpa());
  const WeightedFst g = LmToFst(TrainBigramKn({{"CAT"}}, {"CAT"}));
  try {
    ComposeDecoder(BuildLexiconFst(entries, Arpa()), g);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("DOG"), std::string::npos);
  }
}

}  // namespace
}  // namespace wsd
