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

// Ground-truth belief oracle. A user believes their own item sits where they
// last saw it: the initial placement, the live monitor (Zero mode) or a
// historical snapshot (Finite mode). Shuffles never touch beliefs.

#include <vector>

#include "pickstuff/engine.hpp"

namespace pickstuff {

class BeliefLedger {
 public:
  BeliefLedger() = default;

  /// believed[u] = u for every user. Throws std::invalid_argument if n_users < 1.
  static BeliefLedger init(int n_users);

  int n_users() const { return static_cast<int>(believed_.size()); }

  void observe_monitor(UserId user, const LockerState& current);
  void observe_snapshot(UserId user, const LockerState& shown);

  /// Throws ProtocolError if the user already retrieved.
  Position believed_position(UserId user) const;

  void mark_retrieved(UserId user);
  bool retrieved(UserId user) const;

  friend bool operator==(const BeliefLedger&, const BeliefLedger&) = default;

 private:
  void observe(UserId user, const LockerState& seen, const char* what);
  void check_active(UserId user) const;

  std::vector<Position> believed_;
  std::vector<bool> retrieved_;
};

}  // namespace pickstuff
