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
#include "wsdecode/prefix_table.h"

namespace wsd {
namespace {

using testing::Letters;
using testing::UniformFrames;

double Lin(double log_p) { return std::exp(log_p); }

TEST(PrefixTable, Initialization) {
  PrefixTable table;
  const PrefixProbs* root = table.Find(kEmptyPrefix, 0);
  ASSERT_NE(root, nullptr);
  EXPECT_EQ(root->log_p_b, 0.0);
  EXPECT_EQ(root->log_p_nb, kLogZero);
  EXPECT_EQ(table.NumEntries(), 1u);
  EXPECT_EQ(table.Find(kEmptyPrefix, 1), nullptr);
  const PrefixId a = table.Tree().Extend(kEmptyPrefix, 1);
  EXPECT_EQ(table.Find(a, 0), nullptr);
  EXPECT_EQ(table.PrefixLogProb(kEmptyPrefix, 0), 0.0);
  EXPECT_THROW(table.PrefixLogProb(a, 0), UsageError);
}

TEST(PrefixTable, StayOnEmptyPrefix) {
  const FrameProbs frames = UniformFrames(2, Letters(1));
  PrefixTable table;
  const PrefixProbs& p = table.AdvanceStay(kEmptyPrefix, 0, frames);
  EXPECT_NEAR(Lin(p.log_p_b), 0.5, 1e-15);
  EXPECT_EQ(p.log_p_nb, kLogZero);
}

TEST(PrefixTable, AllBlankFrameMovesMassToBlankBucket) {
  const PhonemeInventory inv = Letters(1);
  // Row 0: uniform, row 1: certain blank.
  const FrameProbs frames(inv, 2, {std::log(0.5), std::log(0.5), 0.0, kLogZero});
  PrefixTable table;
  const auto ext = table.AdvanceExtend(kEmptyPrefix, 1, 0, frames);
  const PrefixProbs before = *ext.probs;
  const PrefixProbs& after = table.AdvanceStay(ext.prefix, 1, frames);
  EXPECT_NEAR(Lin(after.log_p_b), Lin(before.log_p_b) + Lin(before.log_p_nb), 1e-15);
  EXPECT_EQ(after.log_p_nb, kLogZero);
}

TEST(PrefixTable, StayFromNonBlankBucket) {
  const FrameProbs frames = UniformFrames(2, Letters(1));
  PrefixTable table;
  const auto ext = table.AdvanceExtend(kEmptyPrefix, 1, 0, frames);
  EXPECT_EQ(ext.probs->log_p_b, kLogZero);
  EXPECT_NEAR(Lin(ext.probs->log_p_nb), 0.5, 1e-15);
  const PrefixProbs& stay = table.AdvanceStay(ext.prefix, 1, frames);
  EXPECT_NEAR(Lin(stay.log_p_b), 0.25, 1e-15);
  EXPECT_NEAR(Lin(stay.log_p_nb), 0.25, 1e-15);
}

TEST(PrefixTable, RepeatNeedsBlank) {
  const FrameProbs frames = UniformFrames(2, Letters(1));
  PrefixTable table;
  const auto a = table.AdvanceExtend(kEmptyPrefix, 1, 0, frames);
  ASSERT_EQ(a.probs->log_p_b, kLogZero);
  const auto aa = table.AdvanceExtend(a.prefix, 1, 1, frames);
  EXPECT_EQ(aa.probs->log_p_nb, kLogZero);
}

TEST(PrefixTable, UniformTwoFramesGivesThreeQuarters) {
  const FrameProbs frames = UniformFrames(2, Letters(1));
  PrefixTable table;
  const PrefixId a = table.Tree().Extend(kEmptyPrefix, 1);
  const PrefixProbs& p = table.Complete(a, 2, frames);
  EXPECT_NEAR(Lin(p.LogTotal()), 0.75, 1e-15);
  EXPECT_NEAR(table.PrefixLogProb(a, 2), std::log(0.75), 1e-15);
  const PrefixProbs brute = BruteForcePrefixProb(frames, std::vector<Label>{1}, 2);
  EXPECT_NEAR(Lin(brute.LogTotal()), 0.75, 1e-15);
}

TEST(PrefixTable, MemoPurity) {
  Rng rng(3);
  const FrameProbs frames = testing::RandomFrames(rng, 4, Letters(2));
  PrefixTable table;
  const auto a = table.AdvanceExtend(kEmptyPrefix, 2, 0, frames);
  const PrefixProbs first = *a.probs;
  const auto again = table.AdvanceExtend(kEmptyPrefix, 2, 0, frames);
  EXPECT_EQ(std::bit_cast<uint64_t>(again.probs->log_p_nb), std::bit_cast<uint64_t>(first.log_p_nb));
  const PrefixProbs s1 = table.AdvanceStay(a.prefix, 1, frames);
  const PrefixProbs s2 = table.AdvanceStay(a.prefix, 1, frames);
  EXPECT_EQ(std::bit_cast<uint64_t>(s1.log_p_b), std::bit_cast<uint64_t>(s2.log_p_b));
  EXPECT_EQ(std::bit_cast<uint64_t>(s1.log_p_nb), std::bit_cast<uint64_t>(s2.log_p_nb));
}

TEST(PrefixTable, Errors) {
  const FrameProbs frames = UniformFrames(1, Letters(1));
  PrefixTable table;
  EXPECT_THROW(table.AdvanceStay(kEmptyPrefix, 1, frames), UsageError);  // absent
  table.AdvanceStay(kEmptyPrefix, 0, frames);
  EXPECT_THROW(table.AdvanceStay(kEmptyPrefix, 1, frames), UsageError);  // t+1 > T
  EXPECT_THROW(table.AdvanceExtend(kEmptyPrefix, 5, 0, frames), UsageError);
  EXPECT_THROW(table.AdvanceExtend(kEmptyPrefix, 0, 0, frames), UsageError);
}

TEST(BruteForce, TrivialCases) {
  const FrameProbs frames = UniformFrames(3, Letters(2));
  EXPECT_EQ(Lin(BruteForcePrefixProb(frames, {}, 0).LogTotal()), 1.0);
  const std::vector<Label> long_prefix = {1, 2, 1};
  EXPECT_EQ(BruteForcePrefixProb(frames, long_prefix, 2).LogTotal(), kLogZero);
  EXPECT_THROW(BruteForcePrefixProb(UniformFrames(9, Letters(1)), {}, 9), UsageError);
}

// Every key reachable from the root by stays and extends.
void CheckAll(const FrameProbs& frames) {
  PrefixTable table;
  std::vector<PrefixId> level = {kEmptyPrefix};
  const int P = frames.Phonemes().NumPhonemes();
  for (int t = 1; t <= frames.NumFrames(); ++t) {
    std::set<PrefixId> next;
    for (PrefixId id : level) {
      next.insert(id);
      for (Label p = 1; p <= P; ++p) next.insert(table.Tree().Extend(id, p));
    }
    level.assign(next.begin(), next.end());
    for (PrefixId id : level) {
      if (table.Tree().Length(id) > t) continue;
      const PrefixProbs& got = table.Complete(id, t, frames);
      const auto seq = table.Tree().Sequence(id);
      const PrefixProbs want = BruteForcePrefixProb(frames, seq, t);
      ASSERT_NEAR(Lin(got.log_p_b), Lin(want.log_p_b), 1e-9);
      ASSERT_NEAR(Lin(got.log_p_nb), Lin(want.log_p_nb), 1e-9);
    }
  }
}

TEST(BruteForce, MatchesIncrementalOnRandomFrames) {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    const int P = 1 + static_cast<int>(rng.Below(3));
    const int T = 1 + static_cast<int>(rng.Below(5));
    CheckAll(testing::RandomFrames(rng, T, Letters(P)));
  }
}

TEST(BruteForce, RandomPrefixQueries) {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const int P = 1 + static_cast<int>(rng.Below(3));
    const int T = 1 + static_cast<int>(rng.Below(5));
    const FrameProbs frames = testing::RandomFrames(rng, T, Letters(P));
    const int t = static_cast<int>(rng.Below(T + 1));
    std::vector<Label> prefix;
    const int len = static_cast<int>(rng.Below(t + 2));
    for (int k = 0; k < len; ++k) prefix.push_back(1 + static_cast<Label>(rng.Below(P)));
    PrefixTable table;
    const PrefixId id = table.Tree().Intern(prefix);
    const PrefixProbs want = BruteForcePrefixProb(frames, prefix, t);
    if (len > t) {
      EXPECT_EQ(want.LogTotal(), kLogZero);
      continue;
    }
    const PrefixProbs& got = table.Complete(id, t, frames);
    ASSERT_NEAR(Lin(got.log_p_b), Lin(want.log_p_b), 1e-9);
    ASSERT_NEAR(Lin(got.log_p_nb), Lin(want.log_p_nb), 1e-9);
  }
}

TEST(BruteForce, CollapsedMassPartitionsAlignmentSpace) {
  Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    const int T = 1 + static_cast<int>(rng.Below(5));
    const FrameProbs frames = testing::RandomFrames(rng, T, Letters(2));
    double total = 0;
    for (const auto& m : BruteForceCollapsed(frames, T)) {
      total += m.p_b + m.p_nb;
      EXPECT_LE(m.sequence.size(), static_cast<size_t>(T));
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(PrefixTable, RetainKeepsLineages) {
  const FrameProbs frames = UniformFrames(3, Letters(2));
  PrefixTable table;
  const auto a = table.AdvanceExtend(kEmptyPrefix, 1, 0, frames);
  const auto b = table.AdvanceExtend(kEmptyPrefix, 2, 0, frames);
  const auto ab = table.AdvanceExtend(a.prefix, 2, 1, frames);
  const double before = table.Complete(ab.prefix, 2, frames).LogTotal();
  const std::vector<PrefixId> keep = {a.prefix};
  table.Retain(keep);
  EXPECT_EQ(table.Find(b.prefix, 1), nullptr);
  EXPECT_NE(table.Find(ab.prefix, 2), nullptr);
  EXPECT_EQ(table.Complete(ab.prefix, 2, frames).LogTotal(), before);
}

TEST(FrameProbs, Validation) {
  const PhonemeInventory inv = Letters(1);
  EXPECT_THROW(FrameProbs(inv, 0, {}), DataError);
  EXPECT_THROW(FrameProbs(inv, 1, {0.0}), DataError);
  EXPECT_THROW(FrameProbs(inv, 1, {std::log(0.5), std::log(0.4)}), DataError);
  EXPECT_THROW(FrameProbs(inv, 1, {NAN, 0.0}), DataError);
  EXPECT_THROW(FrameProbs(inv, 1, {INFINITY, 0.0}), DataError);
  EXPECT_NO_THROW(FrameProbs(inv, 1, {kLogZero, 0.0}));
}

TEST(FrameProbs, JsonAndBinaryRoundTrip) {
  Rng rng(31);
  const FrameProbs frames = testing::RandomFrames(rng, 7, Letters(3));
  EXPECT_TRUE(FrameProbs::FromJsonText(frames.ToJsonText()) == frames);
  EXPECT_TRUE(FrameProbs::FromBinary(frames.ToBinary()) == frames);
  testing::TempDir dir("frames");
  frames.Write(dir / "f.json");
  frames.Write(dir / "f.bin");
  EXPECT_TRUE(FrameProbs::Read(dir / "f.json") == frames);
  EXPECT_TRUE(FrameProbs::Read(dir / "f.bin") == frames);
  EXPECT_THROW(FrameProbs::FromJsonText("{\"phonemes\": 3}"), DataError);
  EXPECT_THROW(FrameProbs::FromBinary("WSFP"), DataError);
}

}  // namespace
}  // namespace wsd
