// Copyright 2026 The pickstuff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pickstuff/philox.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <vector>
#include <set>

namespace pickstuff {
namespace {

// Known-answer vectors published with Random123 (kat_vectors, philox4x32 10).
TEST(Philox, KnownAnswerVectors) {
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, IsConstexpr) {
  static_assert(philox4x32_10({0, 0, 0, 0}, {0, 0})[0] == 0x6627e8d5u);
  static_assert(turn_seed(0, 0) == 16242730742183356629ull);
}

// Frozen from tools/oracles/script_reference.py.
TEST(Philox, StreamLayoutMatchesReference) {
  EXPECT_EQ(turn_seed(0, 0), 16242730742183356629ull);
  EXPECT_EQ(turn_seed(123456789, 7), 9795081386583653857ull);

  PhiloxStream script(42);
  const std::array<std::uint32_t, 6> expected{0x9ceaf053, 0x77f5493b, 0x12bf50ad,
                                              0x5742b3d7, 0xfcdb2127, 0x53ba6cfd};
  for (auto word : expected) EXPECT_EQ(script.next_u32(), word);

  PhiloxStream agent(42, StreamId::kRandomAgent);
  EXPECT_EQ(agent.next_u32(), 0x02933769u);
  EXPECT_EQ(agent.next_u32(), 0x2051e913u);
}

TEST(Philox, UniformBelowStaysInRangeAndCoversIt) {
  PhiloxStream rng(7);
  for (std::uint32_t bound : {1u, 2u, 3u, 5u, 7u, 1000u}) {
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 5000; ++i) {
      const auto x = rng.uniform_below(bound);
      ASSERT_LT(x, bound);
      seen.insert(x);
    }
    if (bound <= 7) EXPECT_EQ(seen.size(), bound);
  }
}

TEST(Philox, Uniform01AndBernoulliEdges) {
  PhiloxStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_FALSE(rng.bernoulli(0.0));
    ASSERT_TRUE(rng.bernoulli(1.0));
  }
}

TEST(Philox, PermutationIsUniformOverAllOrderings) {
  PhiloxStream rng(11);
  std::map<std::vector<int>, int> counts;
  constexpr int kDraws = 60000;
  for (int i = 0; i < kDraws; ++i) counts[rng.permutation(3)]++;
  ASSERT_EQ(counts.size(), 6u);
  // Each ordering expects 10000; 5 sigma is about 456.
  for (const auto& [perm, count] : counts) EXPECT_NEAR(count, kDraws / 6, 460);
}

TEST(Philox, StreamsUnderOneSeedDiffer) {
  PhiloxStream a(5, StreamId::kScript);
  PhiloxStream b(5, StreamId::kRandomAgent);
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += a.next_u32() == b.next_u32();
  EXPECT_LT(equal, 2);
}

}  // namespace
}  // namespace pickstuff
