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

#include <bit>

#include "test_util.h"
#include "wsdecode/error.h"
#include "wsdecode/interactive_decoder.h"
#include "wsdecode/standard_decoder.h"
#include "wsdecode/wer.h"

namespace wsd {
namespace {

const PhonemeInventory& Arpa() {
  static const PhonemeInventory inv = PhonemeInventory::Arpabet();
  return inv;
}

std::vector<std::string> GreedyCollapse(const FrameProbs& f) {
  std::vector<std::string> out;
  Label prev = kEpsilon;
  for (int t = 0; t < f.NumFrames(); ++t) {
    const auto row = f.Row(t);
    const Label best = static_cast<Label>(std::max_element(row.begin(), row.end()) - row.begin());
    if (best != kEpsilon && best != prev) out.push_back(f.Phonemes().Symbol(best));
    prev = best;
  }
  return out;
}

TEST(Synthesize, NoiselessRowsCollapseToInput) {
  const std::vector<std::string> phones = {"K", "AE", "T", "T", "AH", "P", "P"};
  SynthConfig c;
  c.seed = 3;
  const FrameProbs f = SynthesizeFrameProbs(phones, Arpa(), c);
  EXPECT_EQ(GreedyCollapse(f), phones);
  for (int t = 0; t < f.NumFrames(); ++t) {
    int support = 0;
    for (double v : f.Row(t)) support += v > kLogZero;
    EXPECT_LE(support, 2);  // one phoneme plus blank
  }
}

TEST(Synthesize, SameSeedIsBitIdentical) {
  SynthConfig c;
  c.seed = 42;
  c.noise_temperature = 0.7;
  c.confusion_mass = 0.3;
  const std::vector<std::string> phones = {"S", "IY", "Z", "M"};
  const FrameProbs a = SynthesizeFrameProbs(phones, Arpa(), c);
  const FrameProbs b = SynthesizeFrameProbs(phones, Arpa(), c);
  EXPECT_EQ(a.ToBinary(), b.ToBinary());
  c.seed = 43;
  EXPECT_NE(SynthesizeFrameProbs(phones, Arpa(), c).ToBinary(), a.ToBinary());
}

TEST(Synthesize, ConfusionGroupSharesMassEvenly) {
  SynthConfig c;
  c.confusion_mass = 0.5;
  const FrameProbs f = SynthesizeFrameProbs({"S"}, Arpa(), c);
  const Label s = *Arpa().Find("S"), z = *Arpa().Find("Z");
  int rows = 0;
  for (int t = 0; t < f.NumFrames(); ++t) {
    if (f.LogProb(t, kEpsilon) == 0.0) continue;  // padding blank
    ++rows;
    EXPECT_DOUBLE_EQ(f.LogProb(t, s), f.LogProb(t, z));
    EXPECT_NEAR(std::exp(f.LogProb(t, s)), (1 - c.blank_prob) * 0.5, 1e-12);
    EXPECT_NEAR(std::exp(f.LogProb(t, kEpsilon)), c.blank_prob, 1e-12);
  }
  EXPECT_GE(rows, c.min_frames);
  // Three-member group: each other member gets half the moved mass.
  const FrameProbs b = SynthesizeFrameProbs({"B"}, Arpa(), c);
  EXPECT_NEAR(std::exp(b.LogProb(1, *Arpa().Find("P"))), (1 - c.blank_prob) * 0.25, 1e-12);
  EXPECT_NEAR(std::exp(b.LogProb(1, *Arpa().Find("M"))), (1 - c.blank_prob) * 0.25, 1e-12);
}

TEST(Synthesize, RowsNormalize) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    SynthConfig c;
    c.seed = i;
    c.noise_temperature = rng.Uniform() * 3;
    c.confusion_mass = rng.Uniform();
    c.blank_prob = rng.Uniform();
    const FrameProbs f = SynthesizeFrameProbs({"P", "F", "AA", "S"}, Arpa(), c);
    for (int t = 0; t < f.NumFrames(); ++t) {
      double sum = 0;
      for (double v : f.Row(t)) sum += std::exp(v);
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(Synthesize, Errors) {
  SynthConfig c;
  EXPECT_THROW(SynthesizeFrameProbs({}, Arpa(), c), UsageError);
  EXPECT_THROW(SynthesizeFrameProbs({"QQ"}, Arpa(), c), DataError);
  c.min_frames = 3;
  c.max_frames = 2;
  EXPECT_THROW(SynthesizeFrameProbs({"K"}, Arpa(), c), UsageError);
  EXPECT_THROW(SynthConfig::FromJson({{"blank_prob", 2.0}}), UsageError);
}

TEST(Rng, DocumentedConversions) {
  std::mt19937_64 reference(5);
  Rng rng(5);
  const uint64_t x = reference();
  EXPECT_EQ(rng.Uniform(), static_cast<double>(x >> 11) * 0x1.0p-53);
  EXPECT_EQ(rng.Below(7), reference() % 7);
  // First output of mt19937_64 with the default seed, fixed by the standard.
  std::mt19937_64 standard;
  EXPECT_EQ(standard(), 14514284786278117030ULL);
}

class BenchmarkTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    pipeline_ = new testing::Pipeline(
        testing::MakePipeline(testing::CleanLexicon(testing::DataLexicon()), testing::DataCorpus()));
  }
  static void TearDownTestSuite() { delete pipeline_; }
  static testing::Pipeline* pipeline_;
};
testing::Pipeline* BenchmarkTest::pipeline_ = nullptr;

TEST_F(BenchmarkTest, ReproducibleAndInVocabulary) {
  SynthConfig c;
  c.seed = 77;
  c.noise_temperature = 0.2;
  const auto a = MakeBenchmark(pipeline_->inputs.lexicon, pipeline_->inputs.lm, 100, c, Arpa());
  const auto b = MakeBenchmark(pipeline_->inputs.lexicon, pipeline_->inputs.lm, 100, c, Arpa());
  ASSERT_EQ(a.size(), 100u);
  const std::set<std::string> vocab(pipeline_->inputs.vocab.begin(), pipeline_->inputs.vocab.end());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].words, b[i].words);
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_TRUE(a[i].frames == b[i].frames);
    EXPECT_FALSE(a[i].words.empty());
    EXPECT_LE(a[i].words.size(), static_cast<size_t>(c.max_words));
    for (const auto& w : a[i].words) EXPECT_TRUE(vocab.count(w)) << w;
  }
  EXPECT_THROW(MakeBenchmark(pipeline_->inputs.lexicon, pipeline_->inputs.lm, 0, c, Arpa()),
               UsageError);
}

TEST_F(BenchmarkTest, NoiselessCleanLexiconDecodesExactly) {
  SynthConfig c;
  c.seed = 1;
  for (const auto& u : MakeBenchmark(pipeline_->inputs.lexicon, pipeline_->inputs.lm, 30, c, Arpa())) {
    EXPECT_EQ(StandardBeamDecode(pipeline_->graph, u.frames, DecoderConfig{}).transcript, u.words);
  }
}

TEST_F(BenchmarkTest, ManifestRoundTrip) {
  testing::TempDir dir("manifest");
  SynthConfig c;
  c.seed = 9;
  const auto bench = MakeBenchmark(pipeline_->inputs.lexicon, pipeline_->inputs.lm, 4, c, Arpa());
  WriteBenchmark(dir.path.string(), bench, c, /*binary_frames=*/true);
  const auto entries = ReadManifest(dir / "manifest.json");
  ASSERT_EQ(entries.size(), bench.size());
  for (size_t i = 0; i < bench.size(); ++i) {
    EXPECT_EQ(entries[i].id, bench[i].id);
    EXPECT_EQ(entries[i].transcript, bench[i].words);
    EXPECT_EQ(entries[i].seed, bench[i].seed);
    EXPECT_TRUE(FrameProbs::Read(entries[i].frames_path) == bench[i].frames);
  }
  EXPECT_THROW(ReadManifest(dir / "nope.json"), DataError);
}

double CandidateEntropy(const std::vector<Candidate>& c) {
  double z = 0;
  for (const auto& x : c) z += std::exp(c.front().score - x.score);
  double h = 0;
  for (const auto& x : c) {
    const double p = std::exp(c.front().score - x.score) / z;
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

TEST(Benchmark, EntropyGrowsWithTemperature) {
  const auto p = testing::MakePipeline(testing::DataLexicon(), testing::DataCorpus());
  std::vector<double> mean;
  for (double temperature : {0.0, 0.1, 0.4}) {
    SynthConfig c;
    c.seed = 21;
    c.confusion_mass = 0.3;
    c.noise_temperature = temperature;
    double total = 0;
    int points = 0;
    for (const auto& u : MakeBenchmark(p.inputs.lexicon, p.inputs.lm, 8, c, Arpa())) {
      InteractiveDecode(
          p.graph, u.frames,
          [&](const std::vector<Candidate>& cands, int) {
            total += CandidateEntropy(cands);
            ++points;
            return InteractionOutcome::Select(cands.front().text);
          },
          DecoderConfig{});
    }
    ASSERT_GT(points, 0);
    mean.push_back(total / points);
  }
  EXPECT_LE(mean[0], mean[1]);
  EXPECT_LE(mean[1], mean[2]);
}

}  // namespace
}  // namespace wsd
