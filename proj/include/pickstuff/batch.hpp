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

// Narration-free evaluation of the scripted baselines over many turns.
// evaluate_baseline_serial is the reference; evaluate_baseline_parallel splits
// turns across OpenMP threads and must return the identical vector.

#include <cstdint>
#include <string_view>
#include <vector>

#include "pickstuff/scheduler.hpp"

namespace pickstuff {

enum class Baseline { kOracle, kFrozen, kRandom };

/// "oracle" | "frozen" | "random". Throws std::invalid_argument otherwise.
Baseline parse_baseline(std::string_view name);

/// Correct answers in one turn. The random baseline draws its answers exactly
/// like RandomAgent(turn_seed(agent_seed, turn_index)).
int play_baseline_turn(const EventScript& script, Baseline baseline, std::uint64_t agent_seed);

/// Element i is the correct count of turn first_turn + i.
std::vector<int> evaluate_baseline_serial(const ScriptConfig& config, Baseline baseline, std::uint64_t first_turn,
                                          std::uint64_t n_turns, std::uint64_t agent_seed = 0);
std::vector<int> evaluate_baseline_parallel(const ScriptConfig& config, Baseline baseline, std::uint64_t first_turn,
                                            std::uint64_t n_turns, std::uint64_t agent_seed = 0);

}  // namespace pickstuff
