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

// Physical game state: locker slots, shuffles, swap-on-retrieval and the
// append-only monitor history.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pickstuff {

using UserId = int;

/// A 0-based locker slot index.
struct Position {
  int index = 0;
  friend constexpr auto operator<=>(Position, Position) = default;
};

/// Raised when an event contradicts the physical state (e.g. retrieving an
/// item that is no longer in the locker).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Each slot is empty or holds the item of one user.
using Slot = std::optional<UserId>;

class LockerState {
 public:
  LockerState() = default;
  explicit LockerState(std::vector<Slot> slots) : slots_(std::move(slots)) {}

  /// User i's item at slot i.
  static LockerState initial(int n_users);

  int size() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  const Slot& at(Position p) const { return slots_.at(static_cast<std::size_t>(p.index)); }
  bool contains(Position p) const { return p.index >= 0 && p.index < size(); }

  std::optional<Position> find(UserId user) const;
  int item_count() const;
  bool all_empty() const { return item_count() == 0; }

  friend bool operator==(const LockerState&, const LockerState&) = default;

 private:
  std::vector<Slot> slots_;
};

/// A permutation of slot indices: slot i moves to slot perm[i].
using Permutation = std::vector<int>;

bool is_permutation_of(std::span<const int> perm, int n);

/// result.slots[perm[i]] == state.slots[i]. Throws std::invalid_argument for a
/// wrong length or a non-bijective perm.
LockerState apply_shuffle(const LockerState& state, std::span<const int> perm);

struct RetrievalOutcome {
  UserId user = 0;
  std::optional<Position> predicted;  // nullopt: the answer was unusable
  Position believed;
  Position true_position;
  bool correct = false;
  Position vacated;

  friend bool operator==(const RetrievalOutcome&, const RetrievalOutcome&) = default;
};

struct RetrievalResult {
  LockerState state;
  RetrievalOutcome outcome;
};

/// Swap the slot at `predicted` with the user's item, then empty `predicted`.
/// With no usable prediction the item is removed from where it really is.
/// Throws ProtocolError when the user's item is not in the locker and
/// std::invalid_argument when `predicted` is out of range.
RetrievalResult apply_retrieval(const LockerState& state, UserId user,
                                std::optional<Position> predicted, Position believed);

class MonitorHistory {
 public:
  explicit MonitorHistory(LockerState initial) { states_.push_back(std::move(initial)); }

  void append(LockerState state) { states_.push_back(std::move(state)); }

  std::size_t size() const { return states_.size(); }
  const std::vector<LockerState>& states() const { return states_; }
  const LockerState& latest() const { return states_.back(); }

  /// k = 1 is the most recent state. Throws std::out_of_range unless 1 <= k <= size().
  const LockerState& snapshot_from_last(std::size_t k) const;

 private:
  std::vector<LockerState> states_;
};

enum class GamePhase { kRunning, kFinished };

inline GamePhase phase_of(const LockerState& state) {
  return state.all_empty() ? GamePhase::kFinished : GamePhase::kRunning;
}

/// One game's physical state plus monitor history. Appends to the history after
/// every shuffle and every retrieval.
class Game {
 public:
  explicit Game(int n_users);

  const LockerState& state() const { return history_.latest(); }
  const MonitorHistory& history() const { return history_; }
  GamePhase phase() const { return phase_of(state()); }
  int n_users() const { return n_users_; }
  int retrievals() const { return retrievals_; }

  void shuffle(std::span<const int> perm);
  RetrievalOutcome retrieve(UserId user, std::optional<Position> predicted, Position believed);

 private:
  int n_users_;
  int retrievals_ = 0;
  MonitorHistory history_;
};

}  // namespace pickstuff
