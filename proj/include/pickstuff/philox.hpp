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

#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11) and the
// stream layout every seeded component of the benchmark draws from.
//
// Stream layout, fixed as part of the benchmark contract:
//   turn_seed(master, turn) = words 0,1 of Philox(ctr = {turn_lo, turn_hi, 0, 0},
//                                                 key = {master_lo, master_hi})
//                             combined as (word1 << 32) | word0.
//   PhiloxStream(seed, stream_id) emits the words of successive blocks
//   Philox(ctr = {block_lo, block_hi, stream_id, 0}, key = {seed_lo, seed_hi}),
//   block = 0, 1, 2, ..., words 0..3 of each block in order.
//
// All derived draws (bounded integers, unit doubles, shuffles) are specified
// below in terms of next_u32() only, so output is identical on every platform.

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace pickstuff {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

constexpr PhiloxKey split_key(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Per-turn seed derived from the experiment's master seed.
constexpr std::uint64_t turn_seed(std::uint64_t master_seed, std::uint64_t turn_index) {
  const auto out = philox4x32_10({static_cast<std::uint32_t>(turn_index),
                                  static_cast<std::uint32_t>(turn_index >> 32), 0, 0},
                                 split_key(master_seed));
  return (std::uint64_t{out[1]} << 32) | out[0];
}

/// Well-known stream ids; distinct ids under the same seed never overlap.
enum class StreamId : std::uint32_t {
  kScript = 0,
  kRandomAgent = 1,
};

class PhiloxStream {
 public:
  explicit PhiloxStream(std::uint64_t seed, StreamId stream = StreamId::kScript)
      : key_(split_key(seed)), stream_(static_cast<std::uint32_t>(stream)) {}

  std::uint32_t next_u32() {
    if (word_ == 4) refill();
    return block_[word_++];
  }

  /// High word first.
  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform in [0, bound) by rejection of the low (2^32 mod bound) values.
  std::uint32_t uniform_below(std::uint32_t bound) {
    const std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      const std::uint32_t x = next_u32();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Always consumes exactly one uniform01() draw.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform permutation of [0, n): Fisher-Yates from the identity, i = n-1 .. 1.
  std::vector<int> permutation(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(uniform_below(static_cast<std::uint32_t>(i + 1)));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
  }

  std::uint64_t blocks_consumed() const { return block_index_; }

 private:
  void refill() {
    block_ = philox4x32_10({static_cast<std::uint32_t>(block_index_),
                            static_cast<std::uint32_t>(block_index_ >> 32), stream_, 0},
                           key_);
    ++block_index_;
    word_ = 0;
  }

  PhiloxKey key_;
  std::uint32_t stream_;
  std::uint64_t block_index_ = 0;
  PhiloxCounter block_{};
  int word_ = 4;
};

}  // namespace pickstuff
