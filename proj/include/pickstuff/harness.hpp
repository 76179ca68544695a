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

// Experiment orchestration: plays event scripts against agents, scores turns
// and persists transcripts and reports.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pickstuff/agents.hpp"
#include "pickstuff/engine.hpp"
#include "pickstuff/narrative.hpp"
#include "pickstuff/scheduler.hpp"

namespace pickstuff {

/// Exact non-negative score value; rendered only at the report boundary.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  /// Half-up to two decimals, e.g. "66.67", "100.00".
  std::string to_fixed2() const;
  /// Integer text when exact, otherwise to_fixed2(). Used for "Final score: 100".
  std::string to_display() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

/// 100 * correct / n_users. Throws std::invalid_argument if the number of
/// outcomes differs from n_users.
Rational score_turn(std::span<const RetrievalOutcome> outcomes, int n_users);

/// A protocol violation while replaying a script.
class GameAborted : public ProtocolError {
 public:
  GameAborted(std::size_t event_index, const std::string& what)
      : ProtocolError("event " + std::to_string(event_index) + ": " + what), event_index_(event_index) {}
  std::size_t event_index() const { return event_index_; }

 private:
  std::size_t event_index_;
};

struct TurnReport {
  std::uint64_t turn_index = 0;
  std::uint64_t turn_seed = 0;
  int n_users = 0;
  std::vector<RetrievalOutcome> outcomes;
  std::vector<Prediction> predictions;  // parallel to outcomes
  int correct_count = 0;
  Rational score;
  int parse_failures = 0;      // answers without an in-range position
  int transport_failures = 0;  // no answer obtained at all
  bool aborted = false;
  std::string abort_reason;
};

struct GameOptions {
  /// Emit the game-over fragment to the agent at the end.
  bool announce_result = true;
};

/// Replays `script` against the session. Throws GameAborted on an invalid
/// script or a protocol violation.
TurnReport run_game(const EventScript& script, AgentSession& session, const Narrator& narrator = Narrator{},
                    GameOptions options = {});

/// The session transcript as a player sees it on a terminal: every fragment
/// verbatim, each agent answer on its own line.
std::string render_terminal(std::span<const TranscriptEntry> transcript);

struct AgentSpec {
  std::string kind = "oracle";  // oracle | random | frozen | human | llm
  LlmConfig llm;
  std::uint64_t seed = 0;       // random agent: per-turn seed is turn_seed(seed, turn)
};

struct ExperimentConfig {
  Mode mode = Mode::kZero;
  int n_users = 5;
  int n_turns = 60;
  std::uint64_t master_seed = 0;
  AgentSpec agent;
  IntRange shuffles_between_arrivals{1, 3};
  double p_observe = 0.3;
  int max_staleness = 6;
  std::filesystem::path out_dir;  // empty: nothing is written
  std::optional<std::filesystem::path> templates_dir;

  ScriptConfig script_config() const;
};

/// Builds the agent for one turn. The default factory understands every
/// AgentSpec kind except "human".
using AgentFactory = std::function<std::unique_ptr<Agent>(std::uint64_t turn_index)>;
AgentFactory default_agent_factory(const AgentSpec& spec);

struct ExperimentReport {
  ExperimentConfig config;
  AgentIdentity agent;
  std::vector<TurnReport> turns;
  Rational average_score;  // over completed turns
  bool complete = true;
  std::string template_version;
  std::string started_at;
  std::string finished_at;
};

/// Per-turn transcripts land in `<out>/<model>/<mode>/turn_<i>.jsonl` next to
/// report.json and summary.csv when config.out_dir is set.
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const AgentFactory& factory);

inline constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
/// Columns: model,mode,turn,correct,score,parse_failures,transport_failures.
std::string summary_csv(const ExperimentReport& report, bool with_header = true);
std::string turn_jsonl(const TurnReport& turn, std::span<const TranscriptEntry> transcript,
                       const ExperimentConfig& config, const AgentIdentity& agent);
std::filesystem::path experiment_dir(const std::filesystem::path& out, const std::string& model, Mode mode);

/// Scans `out` for report.json files and tabulates them, with Zero and Finite
/// averages side by side per model.
struct AggregateRow {
  std::string model;
  std::optional<std::string> zero_average;
  std::optional<std::string> finite_average;
};
struct Aggregate {
  std::vector<AggregateRow> rows;
  std::string summary_csv;  // all turns of all reports
  nlohmann::ordered_json table;
};
Aggregate aggregate_reports(const std::filesystem::path& out);

}  // namespace pickstuff
