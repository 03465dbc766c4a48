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

#ifndef WSDECODE_FRAME_PROBS_H_
#define WSDECODE_FRAME_PROBS_H_

#include <span>
#include <string>
#include <vector>

#include "wsdecode/symbol_table.h"

namespace wsd {

// T x (P+1) matrix of per-frame log posteriors. Column 0 is the CTC blank,
// columns 1..P follow the phoneme inventory. Row t is consumed when a search
// advances from t to t+1 consumed frames.
class FrameProbs {
 public:
  FrameProbs() = default;
  // Throws DataError unless every row is finite-or-(-inf) and sums to one
  // within 1e-6 in linear space.
  FrameProbs(PhonemeInventory phonemes, int num_frames,
             std::vector<double> log_probs);

  const PhonemeInventory& Phonemes() const { return phonemes_; }
  int NumFrames() const { return num_frames_; }
  int Width() const { return phonemes_.NumPhonemes() + 1; }
  double LogProb(int frame, Label label) const {
    return log_probs_[static_cast<size_t>(frame) * Width() + label];
  }
  std::span<const double> Row(int frame) const {
    return {log_probs_.data() + static_cast<size_t>(frame) * Width(),
            static_cast<size_t>(Width())};
  }
  const std::vector<double>& Data() const { return log_probs_; }

  // Text form: JSON {"phonemes": [...], "log_probs": [[...], ...]} where the
  // phoneme list starts with the blank and -inf is written as null.
  std::string ToJsonText() const;
  static FrameProbs FromJsonText(const std::string& text);

  // Binary form: "WSFP", u32 version, u64 T, u64 P+1, the P+1 symbols as
  // (u32 length, bytes), then T*(P+1) little-endian f64 row-major.
  std::string ToBinary() const;
  static FrameProbs FromBinary(const std::string& bytes);

  // Dispatches on the ".bin" extension.
  void Write(const std::string& path) const;
  static FrameProbs Read(const std::string& path);

  bool operator==(const FrameProbs& other) const;

 private:
  PhonemeInventory phonemes_;
  int num_frames_ = 0;
  std::vector<double> log_probs_;
};

}  // namespace wsd

#endif  // WSDECODE_FRAME_PROBS_H_
