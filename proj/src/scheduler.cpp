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

#include "pickstuff/scheduler.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pickstuff/philox.hpp"

namespace pickstuff {

using json = nlohmann::ordered_json;

namespace {

constexpr int kScriptFormatVersion = 1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

UserId user_of(const GameEvent& event) {
  return std::visit(Overloaded{[](const Shuffle&) { return -1; },
                               [](const auto& e) { return e.user; }},
                    event);
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::kZero ? "zero" : "finite"; }

Mode parse_mode(std::string_view text) {
  if (text == "zero") return Mode::kZero;
  if (text == "finite") return Mode::kFinite;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected zero|finite)");
}

void ScriptConfig::validate() const {
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  if (shuffles_between_arrivals.min < 0 ||
      shuffles_between_arrivals.max < shuffles_between_arrivals.min) {
    throw std::invalid_argument("shuffles_between_arrivals must satisfy 0 <= min <= max");
  }
  if (!(p_observe >= 0.0 && p_observe <= 1.0)) {
    throw std::invalid_argument("p_observe must lie in [0, 1]");
  }
  if (max_staleness < 1) throw std::invalid_argument("max_staleness must be >= 1");
}

EventScript generate_script(const ScriptConfig& config, std::uint64_t turn_index) {
  config.validate();
  PhiloxStream rng(turn_seed(config.master_seed, turn_index), StreamId::kScript);
  const int n = config.n_users;
  const auto& gap = config.shuffles_between_arrivals;

  EventScript script{config, turn_index, {}};
  const std::vector<int> order = rng.permutation(n);
  std::vector<bool> arrived(static_cast<std::size_t>(n), false);
  int history_length = 1;

  struct PendingObservation {
    int slot;
    GameEvent event;
  };

  for (UserId arriving : order) {
    const int shuffles =
        gap.min + static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(gap.max - gap.min + 1)));

    std::vector<PendingObservation> observations;
    for (UserId v = 0; v < n; ++v) {
      if (arrived[static_cast<std::size_t>(v)]) continue;
      if (!rng.bernoulli(config.p_observe)) continue;
      const int slot = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(shuffles + 1)));
      if (config.mode == Mode::kZero) {
        observations.push_back({slot, MonitorVisit{v}});
      } else {
        const int cap = std::min(history_length + slot, config.max_staleness);
        const int k = cap < 2 ? 1 : 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(cap - 1)));
        observations.push_back({slot, SnapshotView{v, k}});
      }
    }

    for (int slot = 0; slot <= shuffles; ++slot) {
      for (const auto& obs : observations) {
        if (obs.slot == slot) script.events.push_back(obs.event);
      }
      if (slot < shuffles) script.events.push_back(Shuffle{rng.permutation(n)});
    }
    script.events.push_back(Arrival{arriving});
    arrived[static_cast<std::size_t>(arriving)] = true;
    history_length += shuffles + 1;
  }
  return script;
}

std::vector<Violation> validate_script(const EventScript& script) {
  std::vector<Violation> out;
  const int n = script.config.n_users;
  const bool finite = script.config.mode == Mode::kFinite;
  std::set<UserId> arrived;
  std::size_t history_length = 1;

  auto add = [&](std::size_t i, std::string msg) { out.push_back({i, std::move(msg)}); };

  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const GameEvent& event = script.events[i];
    if (const auto* shuffle = std::get_if<Shuffle>(&event)) {
      if (!is_permutation_of(shuffle->perm, n)) {
        add(i, "shuffle is not a permutation of " + std::to_string(n) + " slots");
      }
      ++history_length;
      continue;
    }

    const UserId user = user_of(event);
    if (user < 0 || user >= n) {
      add(i, "unknown User " + std::to_string(user));
      continue;
    }
    if (std::holds_alternative<MonitorVisit>(event) && finite) {
      add(i, "mode mismatch: monitor visit in a finite-mode script");
    }
    if (const auto* view = std::get_if<SnapshotView>(&event)) {
      if (!finite) add(i, "mode mismatch: snapshot view in a zero-mode script");
      if (view->k_from_last < 1 || static_cast<std::size_t>(view->k_from_last) > history_length) {
        add(i, "snapshot " + std::to_string(view->k_from_last) + "-to-last is outside a history of " +
                   std::to_string(history_length) + " states");
      }
    }
    if (std::holds_alternative<Arrival>(event)) {
      if (!arrived.insert(user).second) {
        add(i, "duplicate arrival of User " + std::to_string(user));
      } else {
        ++history_length;
      }
    } else if (arrived.contains(user)) {
      add(i, "User " + std::to_string(user) + " acts after their arrival");
    }
  }
  for (UserId u = 0; u < n; ++u) {
    if (!arrived.contains(u)) {
      add(script.events.size(), "User " + std::to_string(u) + " never arrives");
    }
  }
  return out;
}

namespace {

json config_to_json(const ScriptConfig& c) {
  return json{{"n_users", c.n_users},
              {"mode", to_string(c.mode)},
              {"shuffles_min", c.shuffles_between_arrivals.min},
              {"shuffles_max", c.shuffles_between_arrivals.max},
              {"p_observe", c.p_observe},
              {"max_staleness", c.max_staleness},
              {"master_seed", c.master_seed}};
}

ScriptConfig config_from_json(const json& j) {
  ScriptConfig c;
  c.n_users = j.at("n_users").get<int>();
  c.mode = parse_mode(j.at("mode").get<std::string>());
  c.shuffles_between_arrivals = {j.at("shuffles_min").get<int>(), j.at("shuffles_max").get<int>()};
  c.p_observe = j.at("p_observe").get<double>();
  c.max_staleness = j.at("max_staleness").get<int>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  return c;
}

json event_to_json(const GameEvent& event) {
  return std::visit(
      Overloaded{
          [](const Shuffle& e) { return json{{"event", "shuffle"}, {"perm", e.perm}}; },
          [](const MonitorVisit& e) { return json{{"event", "monitor_visit"}, {"user", e.user}}; },
          [](const SnapshotView& e) {
            return json{{"event", "snapshot_view"}, {"user", e.user}, {"k", e.k_from_last}};
          },
          [](const Arrival& e) { return json{{"event", "arrival"}, {"user", e.user}}; },
      },
      event);
}

GameEvent event_from_json(const json& j) {
  const auto kind = j.at("event").get<std::string>();
  if (kind == "shuffle") return Shuffle{j.at("perm").get<Permutation>()};
  if (kind == "monitor_visit") return MonitorVisit{j.at("user").get<int>()};
  if (kind == "snapshot_view") return SnapshotView{j.at("user").get<int>(), j.at("k").get<int>()};
  if (kind == "arrival") return Arrival{j.at("user").get<int>()};
  throw std::runtime_error("unknown event kind '" + kind + "'");
}

}  // namespace

std::string to_jsonl(const EventScript& script) {
  std::string out = json{{"type", "script"},
                         {"version", kScriptFormatVersion},
                         {"turn_index", script.turn_index},
                         {"turn_seed", turn_seed(script.config.master_seed, script.turn_index)},
                         {"config", config_to_json(script.config)}}
                        .dump();
  out += '\n';
  for (const auto& event : script.events) {
    out += event_to_json(event).dump();
    out += '\n';
  }
  return out;
}

EventScript script_from_jsonl(std::istream& in) {
  EventScript script;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("type", "") != "script") throw std::runtime_error("expected a script header record");
        if (j.at("version").get<int>() != kScriptFormatVersion) {
          throw std::runtime_error("unsupported script version");
        }
        script.turn_index = j.at("turn_index").get<std::uint64_t>();
        script.config = config_from_json(j.at("config"));
        have_header = true;
      } else {
        script.events.push_back(event_from_json(j));
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("script line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("script has no header record");
  return script;
}

std::string describe(const GameEvent& event) {
  return event_to_json(event).dump();
}

}  // namespace pickstuff
