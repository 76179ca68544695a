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

// Seeded generation, validation and serialization of per-turn event scripts.
// A script is fixed before play, so every agent faces identical game states.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pickstuff/engine.hpp"

namespace pickstuff {

enum class Mode { kZero, kFinite };

std::string_view to_string(Mode mode);
/// Accepts "zero" / "finite". Throws std::invalid_argument otherwise.
Mode parse_mode(std::string_view text);

struct Shuffle {
  Permutation perm;
  friend bool operator==(const Shuffle&, const Shuffle&) = default;
};
struct MonitorVisit {
  UserId user = 0;
  friend bool operator==(const MonitorVisit&, const MonitorVisit&) = default;
};
struct SnapshotView {
  UserId user = 0;
  int k_from_last = 1;
  friend bool operator==(const SnapshotView&, const SnapshotView&) = default;
};
struct Arrival {
  UserId user = 0;
  friend bool operator==(const Arrival&, const Arrival&) = default;
};

using GameEvent = std::variant<Shuffle, MonitorVisit, SnapshotView, Arrival>;

struct IntRange {
  int min = 0;
  int max = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct ScriptConfig {
  int n_users = 5;
  Mode mode = Mode::kZero;
  IntRange shuffles_between_arrivals{1, 3};
  double p_observe = 0.3;
  int max_staleness = 6;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;

  friend bool operator==(const ScriptConfig&, const ScriptConfig&) = default;
};

struct EventScript {
  ScriptConfig config;
  std::uint64_t turn_index = 0;
  std::vector<GameEvent> events;

  friend bool operator==(const EventScript&, const EventScript&) = default;
};

/// Pure function of (config, turn_index). Draw order from
/// PhiloxStream(turn_seed(master_seed, turn_index), StreamId::kScript):
///   1. arrival order: permutation(n_users)
///   2. for each arriving user, one gap:
///      a. shuffle count s = min + uniform_below(max - min + 1)
///      b. for each not-yet-arrived user v ascending: bernoulli(p_observe);
///         if observing, insertion point uniform_below(s + 1); in Finite mode
///         then k = 2 + uniform_below(min(L, max_staleness) - 1), or k = 1 when
///         that cap is below 2, where L is the history length at that point
///      c. for slot 0..s: observations inserted at that slot (ascending user),
///         then, below s, one Shuffle with permutation(n_users)
///      d. Arrival(user)
EventScript generate_script(const ScriptConfig& config, std::uint64_t turn_index);

struct Violation {
  std::size_t event_index = 0;  // == events.size() for end-of-script problems
  std::string message;
};

/// Empty iff the script can be replayed without protocol violations.
std::vector<Violation> validate_script(const EventScript& script);

/// Line-delimited JSON: a header record, then one event per line.
std::string to_jsonl(const EventScript& script);
/// Throws std::runtime_error on malformed input.
EventScript script_from_jsonl(std::istream& in);

std::string describe(const GameEvent& event);

}  // namespace pickstuff
