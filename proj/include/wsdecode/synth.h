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

#ifndef WSDECODE_SYNTH_H_
#define WSDECODE_SYNTH_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsdecode/bigram_lm.h"
#include "wsdecode/frame_probs.h"
#include "wsdecode/lexicon.h"

namespace wsd {

// Portable random source. std::mt19937_64 is fully specified by the
// standard; the conversions below are fixed here instead of using the
// implementation-defined std distributions:
//   Uniform() = (x >> 11) * 2^-53,   Below(n) = x mod n.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  uint64_t Next() { return engine_(); }
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  uint64_t Below(uint64_t n) { return Next() % n; }

 private:
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);
// Seed of the index-th utterance of a batch.
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

struct SynthConfig {
  int min_frames = 2;  // frames per phoneme, drawn uniformly in [min, max]
  int max_frames = 4;
  double blank_prob = 0.05;
  double noise_temperature = 0.0;
  double confusion_mass = 0.0;
  // Viseme-style classes: bilabials, labiodentals, sibilants.
  std::vector<std::vector<std::string>> confusion_groups = {
      {"P", "B", "M"}, {"F", "V"}, {"S", "Z"}};
  uint64_t seed = 0;
  int max_words = 8;  // transcript length cap when sampling from the LM

  void Validate() const;
  nlohmann::json ToJson() const;
  static SynthConfig FromJson(const nlohmann::json& j);
};

// Frame layout: one blank frame, then each phoneme held for a drawn number
// of frames (a blank frame separates identical neighbours), then one blank
// frame. A phoneme frame puts blank_prob on blank and the rest on the
// phoneme, moving confusion_mass of that share evenly onto the other members
// of its confusion group. A residual r = tau / (1 + tau) of every row is
// replaced by uniform random weights over all symbols. All rows draw the
// same random numbers whatever the temperature, so only the knobs change
// between runs with one seed.
FrameProbs SynthesizeFrameProbs(const std::vector<std::string>& phonemes,
                                const PhonemeInventory& inventory,
                                const SynthConfig& config, Rng& rng);
FrameProbs SynthesizeFrameProbs(const std::vector<std::string>& phonemes,
                                const PhonemeInventory& inventory,
                                const SynthConfig& config);

struct Utterance {
  std::string id;
  std::vector<std::string> words;
  std::vector<std::string> phonemes;
  uint64_t seed = 0;
  FrameProbs frames;
};

// Samples n transcripts from the LM restricted to words the lexicon can
// pronounce, picks a pronunciation per word uniformly, and synthesizes
// frames. Utterance i uses DeriveSeed(config.seed, i).
std::vector<Utterance> MakeBenchmark(const std::vector<LexiconEntry>& lexicon,
                                     const BigramLm& lm, int n,
                                     const SynthConfig& config,
                                     const PhonemeInventory& inventory);

struct ManifestEntry {
  std::string id;
  std::vector<std::string> transcript;
  std::string frames_path;  // resolved against the manifest's directory
  uint64_t seed = 0;
};

// Writes <dir>/manifest.json and one frame file per utterance.
void WriteBenchmark(const std::string& dir,
                    const std::vector<Utterance>& utterances,
                    const SynthConfig& config, bool binary_frames = false);
std::vector<ManifestEntry> ReadManifest(const std::string& path);

}  // namespace wsd

#endif  // WSDECODE_SYNTH_H_
