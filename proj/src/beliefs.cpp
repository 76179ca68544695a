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

#include "pickstuff/beliefs.hpp"

#include <stdexcept>
#include <string>

namespace pickstuff {

BeliefLedger BeliefLedger::init(int n_users) {
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  BeliefLedger ledger;
  ledger.believed_.reserve(static_cast<std::size_t>(n_users));
  for (int u = 0; u < n_users; ++u) ledger.believed_.push_back(Position{u});
  ledger.retrieved_.assign(static_cast<std::size_t>(n_users), false);
  return ledger;
}

void BeliefLedger::check_active(UserId user) const {
  if (user < 0 || user >= n_users()) {
    throw ProtocolError("unknown User " + std::to_string(user));
  }
  if (retrieved_[static_cast<std::size_t>(user)]) {
    throw ProtocolError("User " + std::to_string(user) + " has already retrieved their item");
  }
}

void BeliefLedger::observe(UserId user, const LockerState& seen, const char* what) {
  check_active(user);
  const auto where = seen.find(user);
  if (!where) {
    throw ProtocolError("User " + std::to_string(user) + " cannot find their item on the " + what);
  }
  believed_[static_cast<std::size_t>(user)] = *where;
}

void BeliefLedger::observe_monitor(UserId user, const LockerState& current) {
  observe(user, current, "monitor");
}

void BeliefLedger::observe_snapshot(UserId user, const LockerState& shown) {
  observe(user, shown, "snapshot");
}

Position BeliefLedger::believed_position(UserId user) const {
  check_active(user);
  return believed_[static_cast<std::size_t>(user)];
}

void BeliefLedger::mark_retrieved(UserId user) {
  check_active(user);
  retrieved_[static_cast<std::size_t>(user)] = true;
}

bool BeliefLedger::retrieved(UserId user) const {
  return user >= 0 && user < n_users() && retrieved_[static_cast<std::size_t>(user)];
}

}  // namespace pickstuff
