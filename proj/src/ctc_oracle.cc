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

#include <cmath>
#include <map>

#include "wsdecode/error.h"
#include "wsdecode/prefix_table.h"

namespace wsd {

std::vector<CollapsedMass> BruteForceCollapsed(const FrameProbs& frames, int t) {
  const int width = frames.Width();
  if (t < 0 || t > frames.NumFrames()) {
    throw UsageError("brute force: t out of range");
  }
  if (t > 8 || width - 1 > 4) {
    throw UsageError("brute force: limited to t <= 8 and P <= 4");
  }
  std::map<std::vector<Label>, std::pair<double, double>> mass;
  std::vector<Label> align(t, 0);
  while (true) {
    double p = 1.0;
    for (int i = 0; i < t; ++i) p *= std::exp(frames.LogProb(i, align[i]));
    std::vector<Label> collapsed;
    Label prev = -1;
    for (Label a : align) {
      if (a != prev && a != kEpsilon) collapsed.push_back(a);
      prev = a;
    }
    auto& bucket = mass[collapsed];
    if (t == 0 || align.back() == kEpsilon) {
      bucket.first += p;
    } else {
      bucket.second += p;
    }
    int i = t - 1;
    while (i >= 0 && ++align[i] == width) align[i--] = 0;
    if (i < 0) break;
  }
  std::vector<CollapsedMass> out;
  for (auto& [seq, m] : mass) out.push_back({seq, m.first, m.second});
  return out;
}

PrefixProbs BruteForcePrefixProb(const FrameProbs& frames,
                                 std::span<const Label> prefix, int t) {
  for (const auto& m : BruteForceCollapsed(frames, t)) {
    if (std::equal(m.sequence.begin(), m.sequence.end(), prefix.begin(),
                   prefix.end())) {
      return {m.p_b > 0 ? std::log(m.p_b) : kLogZero,
              m.p_nb > 0 ? std::log(m.p_nb) : kLogZero};
    }
  }
  return {};
}

}  // namespace wsd
