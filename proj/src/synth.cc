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

#include "wsdecode/synth.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "wsdecode/error.h"
#include "wsdecode/log_math.h"

namespace wsd {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  return SplitMix64(seed ^ SplitMix64(index));
}

void SynthConfig::Validate() const {
  if (min_frames < 1 || max_frames < min_frames) {
    throw UsageError("synth: need 1 <= min_frames <= max_frames");
  }
  const auto unit = [](double v) { return v >= 0 && v <= 1; };
  if (!unit(blank_prob) || !unit(confusion_mass)) {
    throw UsageError("synth: blank_prob and confusion_mass must lie in [0, 1]");
  }
  if (!(noise_temperature >= 0) || std::isinf(noise_temperature)) {
    throw UsageError("synth: noise_temperature must be finite and >= 0");
  }
  if (max_words < 1) throw UsageError("synth: max_words must be >= 1");
}

nlohmann::json SynthConfig::ToJson() const {
  nlohmann::json j;
  j["min_frames"] = min_frames;
  j["max_frames"] = max_frames;
  j["blank_prob"] = blank_prob;
  j["noise_temperature"] = noise_temperature;
  j["confusion_mass"] = confusion_mass;
  j["confusion_groups"] = confusion_groups;
  j["seed"] = seed;
  j["max_words"] = max_words;
  return j;
}

SynthConfig SynthConfig::FromJson(const nlohmann::json& j) {
  SynthConfig c;
  try {
    c.min_frames = j.value("min_frames", c.min_frames);
    c.max_frames = j.value("max_frames", c.max_frames);
    c.blank_prob = j.value("blank_prob", c.blank_prob);
    c.noise_temperature = j.value("noise_temperature", c.noise_temperature);
    c.confusion_mass = j.value("confusion_mass", c.confusion_mass);
    c.confusion_groups = j.value("confusion_groups", c.confusion_groups);
    c.seed = j.value("seed", c.seed);
    c.max_words = j.value("max_words", c.max_words);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("synth config: ") + e.what());
  }
  c.Validate();
  return c;
}

FrameProbs SynthesizeFrameProbs(const std::vector<std::string>& phonemes,
                                const PhonemeInventory& inventory,
                                const SynthConfig& config, Rng& rng) {
  config.Validate();
  if (phonemes.empty()) throw UsageError("synth: empty phoneme sequence");
  const int width = inventory.NumPhonemes() + 1;

  std::map<Label, std::vector<Label>> group_of;
  for (const auto& group : config.confusion_groups) {
    std::vector<Label> ids;
    for (const auto& p : group) {
      if (auto id = inventory.Find(p)) ids.push_back(*id);
    }
    for (Label id : ids) group_of[id] = ids;
  }

  std::vector<double> data;
  int frames = 0;
  const double residual = config.noise_temperature / (1.0 + config.noise_temperature);
  const auto emit = [&](Label target) {
    std::vector<double> row(width, 0.0);
    if (target == kEpsilon) {
      row[0] = 1.0;
    } else {
      row[0] = config.blank_prob;
      const double share = 1.0 - config.blank_prob;
      auto it = group_of.find(target);
      if (it != group_of.end() && it->second.size() > 1) {
        const auto& members = it->second;
        const double each = share * config.confusion_mass /
                            static_cast<double>(members.size() - 1);
        for (Label m : members) {
          row[m] += m == target ? share * (1.0 - config.confusion_mass) : each;
        }
      } else {
        row[target] = share;
      }
    }
    std::vector<double> noise(width);
    double noise_sum = 0;
    for (auto& u : noise) {
      u = rng.Uniform();
      noise_sum += u;
    }
    double total = 0;
    for (int i = 0; i < width; ++i) {
      if (residual > 0) {
        row[i] = (1.0 - residual) * row[i] + residual * noise[i] / noise_sum;
      }
      total += row[i];
    }
    for (double v : row) {
      v /= total;
      data.push_back(v > 0 ? std::log(v) : kLogZero);
    }
    ++frames;
  };

  emit(kEpsilon);
  Label prev = kEpsilon;
  for (const auto& p : phonemes) {
    auto id = inventory.Find(p);
    if (!id) throw DataError("synth: unknown phoneme '" + p + "'");
    if (*id == prev) emit(kEpsilon);
    const int span = config.min_frames +
                     static_cast<int>(rng.Below(config.max_frames - config.min_frames + 1));
    for (int i = 0; i < span; ++i) emit(*id);
    prev = *id;
  }
  emit(kEpsilon);
  return FrameProbs(inventory, frames, std::move(data));
}

FrameProbs SynthesizeFrameProbs(const std::vector<std::string>& phonemes,
                                const PhonemeInventory& inventory,
                                const SynthConfig& config) {
  Rng rng(config.seed);
  return SynthesizeFrameProbs(phonemes, inventory, config, rng);
}

std::vector<Utterance> MakeBenchmark(const std::vector<LexiconEntry>& lexicon,
                                     const BigramLm& lm, int n,
                                     const SynthConfig& config,
                                     const PhonemeInventory& inventory) {
  config.Validate();
  if (n < 1) throw UsageError("benchmark size must be >= 1");
  std::map<std::string, std::vector<const LexiconEntry*>> prons;
  for (const auto& e : lexicon) prons[e.word].push_back(&e);
  std::vector<std::string> words;
  for (const auto& w : lm.Vocab()) {
    if (prons.count(w)) words.push_back(w);
  }
  if (words.empty()) {
    throw DataError("benchmark: no language-model word has a pronunciation");
  }

  std::vector<Utterance> out;
  for (int i = 0; i < n; ++i) {
    Utterance u;
    char id[32];
    std::snprintf(id, sizeof(id), "utt%05d", i);
    u.id = id;
    u.seed = DeriveSeed(config.seed, static_cast<uint64_t>(i));
    Rng rng(u.seed);
    std::string prev(kBos);
    while (static_cast<int>(u.words.size()) < config.max_words) {
      std::vector<double> weights;
      double total = 0;
      for (const auto& w : words) {
        weights.push_back(lm.Prob(prev, w));
        total += weights.back();
      }
      const double p_end = u.words.empty() ? 0.0 : lm.Prob(prev, kEos);
      total += p_end;
      double x = rng.Uniform() * total;
      size_t pick = words.size();  // </s>
      for (size_t k = 0; k < words.size(); ++k) {
        if (x < weights[k]) {
          pick = k;
          break;
        }
        x -= weights[k];
      }
      if (pick == words.size()) {
        if (!u.words.empty()) break;
        pick = words.size() - 1;  // rounding at the tail of the first draw
      }
      u.words.push_back(words[pick]);
      prev = words[pick];
    }
    for (const auto& w : u.words) {
      const auto& options = prons.at(w);
      const auto* entry = options[rng.Below(options.size())];
      u.phonemes.insert(u.phonemes.end(), entry->pronunciation.begin(),
                        entry->pronunciation.end());
    }
    u.frames = SynthesizeFrameProbs(u.phonemes, inventory, config, rng);
    out.push_back(std::move(u));
  }
  return out;
}

void WriteBenchmark(const std::string& dir,
                    const std::vector<Utterance>& utterances,
                    const SynthConfig& config, bool binary_frames) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["version"] = 1;
  manifest["synth"] = config.ToJson();
  auto list = nlohmann::json::array();
  for (const auto& u : utterances) {
    const std::string name = u.id + (binary_frames ? ".frames.bin" : ".frames.json");
    u.frames.Write((fs::path(dir) / name).string());
    nlohmann::json e;
    e["id"] = u.id;
    e["transcript"] = u.words;
    e["frames"] = name;
    e["seed"] = u.seed;
    list.push_back(std::move(e));
  }
  manifest["utterances"] = std::move(list);
  std::ofstream os(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!os) throw DataError("cannot write manifest in " + dir);
  os << manifest.dump(2) << '\n';
}

std::vector<ManifestEntry> ReadManifest(const std::string& path) {
  namespace fs = std::filesystem;
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open manifest: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest " + path + ": " + e.what());
  }
  std::vector<ManifestEntry> out;
  if (!j.contains("utterances")) return out;
  const fs::path base = fs::path(path).parent_path();
  try {
    for (const auto& e : j.at("utterances")) {
      ManifestEntry m;
      m.id = e.at("id").get<std::string>();
      m.transcript = e.at("transcript").get<std::vector<std::string>>();
      const fs::path frames = e.at("frames").get<std::string>();
      m.frames_path = (frames.is_absolute() ? frames : base / frames).string();
      m.seed = e.value("seed", uint64_t{0});
      out.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest " + path + ": " + e.what());
  }
  return out;
}

}  // namespace wsd
