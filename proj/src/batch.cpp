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

#include "pickstuff/batch.hpp"

#include <stdexcept>
#include <string>

#include "pickstuff/beliefs.hpp"
#include "pickstuff/engine.hpp"
#include "pickstuff/philox.hpp"

namespace pickstuff {

Baseline parse_baseline(std::string_view name) {
  if (name == "oracle") return Baseline::kOracle;
  if (name == "frozen") return Baseline::kFrozen;
  if (name == "random") return Baseline::kRandom;
  throw std::invalid_argument("unknown baseline '" + std::string(name) + "'");
}

int play_baseline_turn(const EventScript& script, Baseline baseline, std::uint64_t agent_seed) {
  const int n = script.config.n_users;
  Game game(n);
  BeliefLedger ledger = BeliefLedger::init(n);
  PhiloxStream answers(turn_seed(agent_seed, script.turn_index), StreamId::kRandomAgent);
  int correct = 0;

  for (const GameEvent& event : script.events) {
    if (const auto* shuffle = std::get_if<Shuffle>(&event)) {
      game.shuffle(shuffle->perm);
    } else if (const auto* visit = std::get_if<MonitorVisit>(&event)) {
      ledger.observe_monitor(visit->user, game.state());
    } else if (const auto* view = std::get_if<SnapshotView>(&event)) {
      ledger.observe_snapshot(view->user,
                              game.history().snapshot_from_last(static_cast<std::size_t>(view->k_from_last)));
    } else {
      const UserId user = std::get<Arrival>(event).user;
      const Position believed = ledger.believed_position(user);
      Position predicted;
      switch (baseline) {
        case Baseline::kOracle: predicted = believed; break;
        case Baseline::kFrozen: predicted = Position{user}; break;
        case Baseline::kRandom:
          predicted = Position{static_cast<int>(answers.uniform_below(static_cast<std::uint32_t>(n)))};
          break;
      }
      correct += game.retrieve(user, predicted, believed).correct ? 1 : 0;
      ledger.mark_retrieved(user);
    }
  }
  return correct;
}

std::vector<int> evaluate_baseline_serial(const ScriptConfig& config, Baseline baseline, std::uint64_t first_turn,
                                          std::uint64_t n_turns, std::uint64_t agent_seed) {
  config.validate();
  std::vector<int> correct(n_turns);
  for (std::uint64_t i = 0; i < n_turns; ++i) {
    correct[i] = play_baseline_turn(generate_script(config, first_turn + i), baseline, agent_seed);
  }
  return correct;
}

std::vector<int> evaluate_baseline_parallel(const ScriptConfig& config, Baseline baseline, std::uint64_t first_turn,
                                            std::uint64_t n_turns, std::uint64_t agent_seed) {
  config.validate();
  std::vector<int> correct(n_turns);
  const auto count = static_cast<std::int64_t>(n_turns);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto turn = first_turn + static_cast<std::uint64_t>(i);
    correct[static_cast<std::size_t>(i)] = play_baseline_turn(generate_script(config, turn), baseline, agent_seed);
  }
  return correct;
}

}  // namespace pickstuff
