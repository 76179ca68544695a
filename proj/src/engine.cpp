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

#include <algorithm>
#include <utility>

namespace pickstuff {

LockerState LockerState::initial(int n_users) {
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  std::vector<Slot> slots;
  slots.reserve(static_cast<std::size_t>(n_users));
  for (UserId u = 0; u < n_users; ++u) slots.emplace_back(u);
  return LockerState(std::move(slots));
}

std::optional<Position> LockerState::find(UserId user) const {
  for (int i = 0; i < size(); ++i) {
    if (slots_[static_cast<std::size_t>(i)] == user) return Position{i};
  }
  return std::nullopt;
}

int LockerState::item_count() const {
  return static_cast<int>(
      std::count_if(slots_.begin(), slots_.end(), [](const Slot& s) { return s.has_value(); }));
}

bool is_permutation_of(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int target : perm) {
    if (target < 0 || target >= n || seen[static_cast<std::size_t>(target)]) return false;
    seen[static_cast<std::size_t>(target)] = true;
  }
  return true;
}

LockerState apply_shuffle(const LockerState& state, std::span<const int> perm) {
  if (!is_permutation_of(perm, state.size())) {
    throw std::invalid_argument("shuffle is not a permutation of " +
                                std::to_string(state.size()) + " slots");
  }
  std::vector<Slot> out(state.slots().size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out[static_cast<std::size_t>(perm[i])] = state.slots()[i];
  }
  return LockerState(std::move(out));
}

RetrievalResult apply_retrieval(const LockerState& state, UserId user,
                                std::optional<Position> predicted, Position believed) {
  const auto true_position = state.find(user);
  if (!true_position) {
    throw ProtocolError("item of User " + std::to_string(user) + " is not in the locker");
  }
  if (predicted && !state.contains(*predicted)) {
    throw std::invalid_argument("predicted position " + std::to_string(predicted->index) +
                                " is outside the locker");
  }

  std::vector<Slot> slots = state.slots();
  Position vacated = *true_position;
  if (predicted) {
    std::swap(slots[static_cast<std::size_t>(predicted->index)],
              slots[static_cast<std::size_t>(true_position->index)]);
    vacated = *predicted;
  }
  slots[static_cast<std::size_t>(vacated.index)].reset();

  RetrievalOutcome outcome{
      .user = user,
      .predicted = predicted,
      .believed = believed,
      .true_position = *true_position,
      .correct = predicted.has_value() && *predicted == believed,
      .vacated = vacated,
  };
  return {LockerState(std::move(slots)), outcome};
}

const LockerState& MonitorHistory::snapshot_from_last(std::size_t k) const {
  if (k < 1 || k > states_.size()) {
    throw std::out_of_range("snapshot " + std::to_string(k) + "-to-last requested from a history of " +
                            std::to_string(states_.size()) + " states");
  }
  return states_[states_.size() - k];
}

Game::Game(int n_users) : n_users_(n_users), history_(LockerState::initial(n_users)) {}

void Game::shuffle(std::span<const int> perm) { history_.append(apply_shuffle(state(), perm)); }

RetrievalOutcome Game::retrieve(UserId user, std::optional<Position> predicted, Position believed) {
  if (phase() == GamePhase::kFinished) throw ProtocolError("retrieval after the game finished");
  auto [next, outcome] = apply_retrieval(state(), user, predicted, believed);
  history_.append(std::move(next));
  ++retrievals_;
  return outcome;
}

}  // namespace pickstuff
