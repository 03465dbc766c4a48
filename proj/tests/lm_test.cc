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

TEST(TrainBigramKn, HandComputedProbability) {
  const Corpus corpus = {{"a", "b"}, {"a", "b"}};
  const BigramLm lm = TrainBigramKn(corpus, {"a", "b"}, 0.5);
  // Bigram types: (<s>,a) (a,b) (b,</s>); b has one left context.
  const double p_cont_b = 1.0 / 3.0;
  const double lambda_a = 0.5 * 1.0 / 2.0;
  EXPECT_NEAR(lm.ContinuationProb("b"), p_cont_b, 1e-15);
  EXPECT_NEAR(lm.Backoff("a"), lambda_a, 1e-15);
  EXPECT_NEAR(lm.Prob("a", "b"), (2.0 - 0.5) / 2.0 + lambda_a * p_cont_b, 1e-12);
  EXPECT_NEAR(lm.Prob("a", "b"), 0.8333333333333334, 1e-12);
  EXPECT_NEAR(lm.Prob("a", "a"), lambda_a / 3.0, 1e-12);
  EXPECT_NEAR(lm.Prob("a", std::string(kEos)), lambda_a / 3.0, 1e-12);
}

TEST(TrainBigramKn, EveryContextNormalizes) {
  const Corpus corpus = testing::DataCorpus();
  const BigramLm lm = TrainBigramKn(corpus, SelectVocab(corpus, 50));
  for (const auto& v : lm.Contexts()) {
    double sum = 0;
    for (const auto& w : lm.Predictable()) sum += lm.Prob(v, w);
    EXPECT_NEAR(sum, 1.0, 1e-9) << v;
    double discounted = lm.Backoff(v);
    for (const auto& w : lm.Predictable()) discounted += lm.DiscountedProb(v, w);
    EXPECT_NEAR(discounted, 1.0, 1e-9) << v;
  }
}

TEST(TrainBigramKn, SymmetricCorpusGivesEqualProbabilities) {
  const BigramLm lm = TrainBigramKn({{"x"}, {"y"}}, {"x", "y"});
  EXPECT_DOUBLE_EQ(lm.Prob(kBos, "x"), lm.Prob(kBos, "y"));
  EXPECT_DOUBLE_EQ(lm.Prob("x", kEos), lm.Prob("y", kEos));
}

TEST(TrainBigramKn, UnseenContextUsesContinuation) {
  const BigramLm lm = TrainBigramKn({{"a", "b"}}, {"a", "b", "c"});
  EXPECT_DOUBLE_EQ(lm.Backoff("c"), 1.0);
  EXPECT_DOUBLE_EQ(lm.Prob("c", "b"), lm.ContinuationProb("b"));
}

TEST(TrainBigramKn, OutOfVocabularyMapsToUnk) {
  const BigramLm lm = TrainBigramKn({{"a", "zzz"}, {"a", "b"}}, {"a", "b"});
  EXPECT_GT(lm.Prob("a", kUnk), 0.0);
  EXPECT_DOUBLE_EQ(lm.Prob("a", "zzz"), lm.Prob("a", kUnk));
  EXPECT_DOUBLE_EQ(lm.Prob("zzz", "b"), lm.Prob(kUnk, "b"));
}

TEST(TrainBigramKn, Errors) {
  EXPECT_THROW(TrainBigramKn({}, {"a"}), DataError);
  EXPECT_THROW(TrainBigramKn({{"a"}}, {"a"}, 0.0), UsageError);
  EXPECT_THROW(TrainBigramKn({{"a"}}, {"a"}, 1.0), UsageError);
  EXPECT_THROW(TrainBigramKn({{"a", "<s>"}}, {"a"}), DataError);
}

TEST(SelectVocab, MostFrequentWithLexicographicTies) {
  const Corpus corpus = {{"c", "b", "a"}, {"c", "b"}, {"c", "e", "d"}};
  EXPECT_EQ(SelectVocab(corpus, 3), (std::vector<std::string>{"c", "b", "a"}));
  EXPECT_EQ(SelectVocab(corpus, 10).size(), 5u);
}

TEST(LmToFst, TwoWordSequenceMatchesDirectEvaluation) {
  const BigramLm lm = TrainBigramKn({{"a", "b"}, {"a", "b"}, {"b"}}, {"a", "b"});
  const WeightedFst g = LmToFst(lm);
  g.Validate();
  const double direct = -std::log(lm.Prob(kBos, "a")) - std::log(lm.Prob("a", "b")) -
                        std::log(lm.Prob("b", kEos));
  EXPECT_NEAR(testing::AcceptorWeight(g, testing::WordIds(g.Words(), {"a", "b"})),
              direct, 1e-12);
  EXPECT_NEAR(direct, -lm.SentenceLogProb({"a", "b"}), 1e-12);
}

TEST(LmToFst, EmptySequenceIsEndOfSentence) {
  const BigramLm lm = TrainBigramKn({{"a", "b"}, {"b"}}, {"a", "b"});
  const WeightedFst g = LmToFst(lm);
  EXPECT_NEAR(testing::AcceptorWeight(g, {}), -std::log(lm.Prob(kBos, kEos)), 1e-12);
}

TEST(LmToFst, RandomSentencesMatchAndBoundEveryDecomposition) {
  const Corpus corpus = testing::DataCorpus();
  const BigramLm lm = TrainBigramKn(corpus, SelectVocab(corpus, 40));
  const WeightedFst g = LmToFst(lm);
  g.Validate();
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> words;
    const int n = 1 + static_cast<int>(rng.Below(5));
    for (int k = 0; k < n; ++k) words.push_back(lm.Vocab()[rng.Below(lm.Vocab().size())]);
    const double fst = testing::AcceptorWeight(g, testing::WordIds(g.Words(), words));
    EXPECT_NEAR(fst, -lm.SentenceLogProb(words), 1e-9);
    // A path that always backs off is one decomposition; the FST weight is
    // never above it.
    double backoff_path = 0;
    std::string prev(kBos);
    for (const auto& w : words) {
      backoff_path += -std::log(lm.Backoff(prev)) - std::log(lm.ContinuationProb(w));
      prev = w;
    }
    backoff_path += -std::log(lm.Prob(prev, kEos));
    EXPECT_LE(fst, backoff_path + 1e-12);
  }
}

}  // namespace
}  // namespace wsd
