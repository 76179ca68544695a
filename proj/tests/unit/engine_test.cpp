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

#include "pickstuff/engine.hpp"

#include <gtest/gtest.h>

#include "pickstuff/philox.hpp"

namespace pickstuff {
namespace {

LockerState locker(std::initializer_list<int> slots) {
  std::vector<Slot> out;
  for (int s : slots) out.push_back(s < 0 ? Slot{} : Slot{s});
  return LockerState(std::move(out));
}

constexpr int E = -1;

TEST(ApplyShuffle, MovesSlotIToPermI) {
  EXPECT_EQ(apply_shuffle(locker({0, 1, 2}), std::vector{2, 0, 1}), locker({1, 2, 0}));
}

TEST(ApplyShuffle, IdentityLeavesStateUnchanged) {
  const auto s = locker({2, E, 0, 1});
  EXPECT_EQ(apply_shuffle(s, std::vector{0, 1, 2, 3}), s);
}

TEST(ApplyShuffle, EmptiesMoveWithItems) {
  EXPECT_EQ(apply_shuffle(locker({E, 2, E}), std::vector{2, 0, 1}), locker({2, E, E}));
}

TEST(ApplyShuffle, RejectsBadPermutations) {
  const auto s = locker({0, 1, 2});
  EXPECT_THROW(apply_shuffle(s, std::vector{0, 1}), std::invalid_argument);
  EXPECT_THROW(apply_shuffle(s, std::vector{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(apply_shuffle(s, std::vector{0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(apply_shuffle(s, std::vector{-1, 0, 1}), std::invalid_argument);
}

TEST(ApplyRetrieval, CorrectPredictionSwapsThenRemoves) {
  const auto [state, outcome] = apply_retrieval(locker({2, 0, 1}), 1, Position{1}, Position{1});
  EXPECT_EQ(state, locker({2, E, 0}));
  EXPECT_TRUE(outcome.correct);
  EXPECT_EQ(outcome.true_position, Position{2});
  EXPECT_EQ(outcome.vacated, Position{1});
}

TEST(ApplyRetrieval, PredictionAtTruePositionIsNoOpSwap) {
  const auto [state, outcome] = apply_retrieval(locker({E, E, 2}), 2, Position{2}, Position{2});
  EXPECT_TRUE(state.all_empty());
  EXPECT_TRUE(outcome.correct);
  EXPECT_EQ(outcome.vacated, Position{2});
}

TEST(ApplyRetrieval, WrongPredictionStillSwapsAndVacatesPredicted) {
  const auto [state, outcome] = apply_retrieval(locker({2, 0, E}), 0, Position{0}, Position{1});
  EXPECT_EQ(state, locker({E, 2, E}));
  EXPECT_FALSE(outcome.correct);
  EXPECT_EQ(outcome.vacated, Position{0});
  EXPECT_EQ(outcome.true_position, Position{1});
}

TEST(ApplyRetrieval, InvalidPredictionRemovesFromTruePosition) {
  const auto [state, outcome] = apply_retrieval(locker({2, 0, 1}), 0, std::nullopt, Position{0});
  EXPECT_EQ(state, locker({2, E, 1}));
  EXPECT_FALSE(outcome.correct);
  EXPECT_EQ(outcome.vacated, Position{1});
}

TEST(ApplyRetrieval, MissingItemIsAProtocolViolation) {
  EXPECT_THROW(apply_retrieval(locker({E, 1}), 0, Position{0}, Position{0}), ProtocolError);
}

TEST(ApplyRetrieval, OutOfRangePredictionIsRejected) {
  EXPECT_THROW(apply_retrieval(locker({0, 1}), 0, Position{2}, Position{0}), std::invalid_argument);
}

TEST(MonitorHistory, SnapshotFromLastMatchesListingIndexing) {
  MonitorHistory h(locker({0, 1, 2}));
  h.append(locker({1, 2, 0}));
  h.append(locker({2, 0, 1}));
  h.append(locker({2, E, 0}));
  EXPECT_EQ(h.snapshot_from_last(2), locker({2, 0, 1}));
  EXPECT_EQ(h.snapshot_from_last(1), locker({2, E, 0}));
  EXPECT_EQ(h.snapshot_from_last(4), locker({0, 1, 2}));
  EXPECT_THROW(h.snapshot_from_last(0), std::out_of_range);
  EXPECT_THROW(h.snapshot_from_last(5), std::out_of_range);
}

TEST(MonitorHistory, SingleEntryHistory) {
  const MonitorHistory h(LockerState::initial(3));
  EXPECT_EQ(h.snapshot_from_last(1), LockerState::initial(3));
}

TEST(Game, AppendsAfterShufflesAndRetrievalsAndFinishes) {
  Game game(2);
  EXPECT_EQ(game.phase(), GamePhase::kRunning);
  game.shuffle(std::vector{1, 0});
  EXPECT_EQ(game.history().size(), 2u);
  game.retrieve(0, Position{1}, Position{1});
  EXPECT_EQ(game.history().size(), 3u);
  EXPECT_EQ(game.phase(), GamePhase::kRunning);
  game.retrieve(1, std::nullopt, Position{1});
  EXPECT_EQ(game.phase(), GamePhase::kFinished);
  EXPECT_EQ(game.retrievals(), 2);
  EXPECT_THROW(game.retrieve(1, std::nullopt, Position{0}), ProtocolError);
}

// Conservation under random shuffles and retrievals with arbitrary predictions.
TEST(GameProperty, ItemConservation) {
  PhiloxStream rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(8));
    Game game(n);
    std::vector<int> order = rng.permutation(n);
    std::vector<bool> gone(static_cast<std::size_t>(n), false);
    std::size_t total_shuffles = 0;
    for (int step = 0; step < n; ++step) {
      const int shuffles = static_cast<int>(rng.uniform_below(4));
      for (int s = 0; s < shuffles; ++s) {
        const int before = game.state().item_count();
        game.shuffle(rng.permutation(n));
        ++total_shuffles;
        ASSERT_EQ(game.state().item_count(), before);
      }
      const UserId user = order[static_cast<std::size_t>(step)];
      std::optional<Position> predicted;
      if (rng.uniform_below(4) != 0) predicted = Position{static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(n)))};
      const LockerState before = game.state();
      const auto outcome = game.retrieve(user, predicted, Position{0});
      gone[static_cast<std::size_t>(user)] = true;
      ASSERT_EQ(game.state().item_count(), before.item_count() - 1);
      ASSERT_FALSE(game.state().at(outcome.vacated).has_value());
      for (UserId u = 0; u < n; ++u) {
        ASSERT_EQ(game.state().find(u).has_value(), !gone[static_cast<std::size_t>(u)]);
      }
    }
    ASSERT_EQ(game.phase(), GamePhase::kFinished);
    ASSERT_EQ(game.history().size(), 1 + total_shuffles + static_cast<std::size_t>(n));
  }
}

}  // namespace
}  // namespace pickstuff
