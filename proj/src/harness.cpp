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

#include "pickstuff/harness.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "pickstuff/beliefs.hpp"
#include "pickstuff/philox.hpp"

namespace pickstuff {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Rational add(const Rational& a, const Rational& b) {
  return Rational::make(a.num * b.den + b.num * a.den, a.den * b.den);
}

std::string csv_row(const std::string& model, std::string_view mode, std::uint64_t turn, int correct,
                    const std::string& score, int parse_failures, int transport_failures) {
  std::string quoted = model;
  if (quoted.find_first_of(",\"\n") != std::string::npos) {
    std::string escaped;
    for (char c : quoted) {
      if (c == '"') escaped += '"';
      escaped += c;
    }
    quoted = "\"" + escaped + "\"";
  }
  std::ostringstream row;
  row << quoted << ',' << mode << ',' << turn << ',' << correct << ',' << score << ',' << parse_failures
      << ',' << transport_failures << '\n';
  return row.str();
}

constexpr const char* kCsvHeader = "model,mode,turn,correct,score,parse_failures,transport_failures\n";

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("scores are non-negative with a positive denominator");
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::to_fixed2() const {
  const std::int64_t hundredths = (num * 200 + den) / (2 * den);
  const std::int64_t frac = hundredths % 100;
  return std::to_string(hundredths / 100) + (frac < 10 ? ".0" : ".") + std::to_string(frac);
}

std::string Rational::to_display() const { return den == 1 ? std::to_string(num) : to_fixed2(); }

Rational score_turn(std::span<const RetrievalOutcome> outcomes, int n_users) {
  if (n_users < 1 || static_cast<int>(outcomes.size()) != n_users) {
    throw std::invalid_argument("expected " + std::to_string(n_users) + " outcomes, got " +
                                std::to_string(outcomes.size()));
  }
  const auto correct = std::count_if(outcomes.begin(), outcomes.end(),
                                     [](const RetrievalOutcome& o) { return o.correct; });
  return Rational::make(100 * correct, n_users);
}

TurnReport run_game(const EventScript& script, AgentSession& session, const Narrator& narrator,
                    GameOptions options) {
  if (const auto violations = validate_script(script); !violations.empty()) {
    throw GameAborted(violations.front().event_index, violations.front().message);
  }
  const int n = script.config.n_users;
  TurnReport report;
  report.turn_index = script.turn_index;
  report.turn_seed = turn_seed(script.config.master_seed, script.turn_index);
  report.n_users = n;

  Game game(n);
  BeliefLedger ledger = BeliefLedger::init(n);
  session.notify(narrator.intro(script.config.mode));
  session.notify(narrator.game_start(n));

  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const GameEvent& event = script.events[i];
    try {
      std::visit(Overloaded{
                     [&](const Shuffle& e) {
                       game.shuffle(e.perm);
                       session.notify(narrator.event(event, game.state()));
                     },
                     [&](const MonitorVisit& e) {
                       ledger.observe_monitor(e.user, game.state());
                       session.notify(narrator.event(event, game.state()));
                     },
                     [&](const SnapshotView& e) {
                       ledger.observe_snapshot(
                           e.user, game.history().snapshot_from_last(static_cast<std::size_t>(e.k_from_last)));
                       session.notify(narrator.event(event, game.state()));
                     },
                     [&](const Arrival& e) {
                       const QuestionContext ctx{e.user, game.state().size(), &ledger};
                       Prediction prediction = session.predict(narrator.event(event, game.state()), ctx);
                       const Position believed = ledger.believed_position(e.user);
                       const RetrievalOutcome outcome = game.retrieve(e.user, prediction.value, believed);
                       ledger.mark_retrieved(e.user);
                       if (prediction.transport_error) {
                         ++report.transport_failures;
                       } else if (!prediction.value) {
                         ++report.parse_failures;
                       }
                       report.outcomes.push_back(outcome);
                       report.predictions.push_back(std::move(prediction));
                       session.notify(narrator.feedback(outcome, game.state()));
                     },
                 },
                 event);
    } catch (const GameAborted&) {
      throw;
    } catch (const ProtocolError& e) {
      throw GameAborted(i, e.what());
    } catch (const std::out_of_range& e) {
      throw GameAborted(i, e.what());
    }
  }
  if (game.phase() != GamePhase::kFinished) {
    throw GameAborted(script.events.size(), "script ended with items left in the locker");
  }

  report.correct_count = static_cast<int>(std::count_if(
      report.outcomes.begin(), report.outcomes.end(), [](const RetrievalOutcome& o) { return o.correct; }));
  report.score = score_turn(report.outcomes, n);
  if (options.announce_result) {
    session.notify(narrator.game_over(report.correct_count, report.score.to_display()));
  }
  return report;
}

std::string render_terminal(std::span<const TranscriptEntry> transcript) {
  std::string out;
  for (const auto& entry : transcript) {
    if (entry.role != Role::kAgent) {
      out += entry.text;
      continue;
    }
    std::string_view answer = entry.text;
    while (!answer.empty() && (answer.back() == '\n' || answer.back() == '\r')) answer.remove_suffix(1);
    out += answer;
    out += '\n';
  }
  return out;
}

ScriptConfig ExperimentConfig::script_config() const {
  return ScriptConfig{n_users, mode, shuffles_between_arrivals, p_observe, max_staleness, master_seed};
}

AgentFactory default_agent_factory(const AgentSpec& spec) {
  if (spec.kind == "oracle") return [](std::uint64_t) { return std::make_unique<OracleAgent>(); };
  if (spec.kind == "frozen") return [](std::uint64_t) { return std::make_unique<FrozenBeliefAgent>(); };
  if (spec.kind == "random") {
    return [seed = spec.seed](std::uint64_t turn) { return std::make_unique<RandomAgent>(turn_seed(seed, turn)); };
  }
  if (spec.kind == "llm") {
    if (spec.llm.model.empty()) throw std::invalid_argument("llm agent needs a model name");
    return [llm = spec.llm](std::uint64_t) { return std::make_unique<LlmAgent>(llm); };
  }
  throw std::invalid_argument("no default factory for agent kind '" + spec.kind + "'");
}

std::filesystem::path experiment_dir(const std::filesystem::path& out, const std::string& model, Mode mode) {
  std::string safe = model.empty() ? "unnamed" : model;
  std::replace_if(safe.begin(), safe.end(), [](char c) { return c == '/' || c == '\\' || c == ' '; }, '_');
  if (safe == "." || safe == "..") safe = "unnamed";
  return out / safe / std::string(to_string(mode));
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, default_agent_factory(config.agent));
}

ExperimentReport run_experiment(const ExperimentConfig& config, const AgentFactory& factory) {
  if (config.n_turns < 1) throw std::invalid_argument("n_turns must be >= 1");
  const ScriptConfig script_config = config.script_config();
  script_config.validate();

  const TemplateSet templates =
      config.templates_dir ? TemplateSet::with_overrides(*config.templates_dir) : TemplateSet::builtin();
  const Narrator narrator(templates);

  ExperimentReport report;
  report.config = config;
  report.template_version = templates.version();
  report.started_at = utc_timestamp();

  std::filesystem::path dir;
  Rational total;
  int completed = 0;
  for (int t = 0; t < config.n_turns; ++t) {
    const auto turn = static_cast<std::uint64_t>(t);
    const EventScript script = generate_script(script_config, turn);
    AgentSession session(factory(turn));
    if (t == 0) {
      report.agent = session.identity();
      if (!config.out_dir.empty()) {
        dir = experiment_dir(config.out_dir, report.agent.model, config.mode);
        std::filesystem::create_directories(dir);
      }
    }

    TurnReport turn_report;
    try {
      turn_report = run_game(script, session, narrator);
      total = add(total, turn_report.score);
      ++completed;
    } catch (const GameAborted& e) {
      turn_report.turn_index = turn;
      turn_report.turn_seed = turn_seed(config.master_seed, turn);
      turn_report.n_users = config.n_users;
      turn_report.aborted = true;
      turn_report.abort_reason = e.what();
      report.complete = false;
    }
    session.close();
    if (!dir.empty()) {
      write_file(dir / ("turn_" + std::to_string(t) + ".jsonl"),
                 turn_jsonl(turn_report, session.transcript(), config, report.agent));
    }
    report.turns.push_back(std::move(turn_report));
  }

  report.average_score = completed == 0 ? Rational{} : Rational::make(total.num, total.den * completed);
  report.finished_at = utc_timestamp();
  if (!dir.empty()) {
    write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
    write_file(dir / "summary.csv", summary_csv(report));
  }
  return report;
}

json report_to_json(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  json agent_config{{"kind", c.agent.kind}, {"seed", c.agent.seed}};
  if (c.agent.kind == "llm") {
    agent_config["endpoint"] = c.agent.llm.endpoint;
    agent_config["path"] = c.agent.llm.path;
    agent_config["model"] = c.agent.llm.model;
    agent_config["api_key_env"] = c.agent.llm.api_key_env;
  }

  json turns = json::array();
  for (const auto& t : report.turns) {
    json turn{{"turn_index", t.turn_index},
              {"turn_seed", t.turn_seed},
              {"correct", t.correct_count},
              {"score", t.aborted ? json(nullptr) : json(t.score.to_fixed2())},
              {"parse_failures", t.parse_failures},
              {"transport_failures", t.transport_failures},
              {"aborted", t.aborted}};
    if (t.aborted) turn["abort_reason"] = t.abort_reason;
    turns.push_back(std::move(turn));
  }

  return json{
      {"schema_version", kReportSchemaVersion},
      {"config",
       {{"mode", to_string(c.mode)},
        {"n_users", c.n_users},
        {"n_turns", c.n_turns},
        {"master_seed", c.master_seed},
        {"scheduler",
         {{"shuffles_min", c.shuffles_between_arrivals.min},
          {"shuffles_max", c.shuffles_between_arrivals.max},
          {"p_observe", c.p_observe},
          {"max_staleness", c.max_staleness}}},
        {"agent", agent_config}}},
      {"agent",
       {{"kind", report.agent.kind},
        {"model", report.agent.model},
        {"temperature", c.agent.llm.temperature},
        {"conversation", "full-history-resend"}}},
      {"template_version", report.template_version},
      {"complete", report.complete},
      {"average_score", report.average_score.to_fixed2()},
      {"turns", std::move(turns)},
      {"metadata", {{"started_at", report.started_at}, {"finished_at", report.finished_at}}},
  };
}

std::string summary_csv(const ExperimentReport& report, bool with_header) {
  std::string out = with_header ? kCsvHeader : "";
  for (const auto& t : report.turns) {
    out += csv_row(report.agent.model, to_string(report.config.mode), t.turn_index, t.correct_count,
                   t.aborted ? "" : t.score.to_fixed2(), t.parse_failures, t.transport_failures);
  }
  return out;
}

std::string turn_jsonl(const TurnReport& turn, std::span<const TranscriptEntry> transcript,
                       const ExperimentConfig& config, const AgentIdentity& agent) {
  std::string out;
  auto emit = [&out](const json& j) {
    out += j.dump();
    out += '\n';
  };
  emit({{"type", "turn"},
        {"turn_index", turn.turn_index},
        {"turn_seed", turn.turn_seed},
        {"master_seed", config.master_seed},
        {"mode", to_string(config.mode)},
        {"n_users", config.n_users},
        {"agent", agent.kind},
        {"model", agent.model}});

  std::size_t answered = 0;
  for (const auto& entry : transcript) {
    emit({{"type", "message"}, {"role", to_string(entry.role)}, {"text", entry.text}});
    if (entry.role != Role::kAgent || answered >= turn.outcomes.size()) continue;
    const RetrievalOutcome& o = turn.outcomes[answered];
    const Prediction& p = turn.predictions[answered];
    ++answered;
    json record{{"type", "outcome"},
                {"user", o.user},
                {"raw", p.raw},
                {"predicted", o.predicted ? json(o.predicted->index) : json(nullptr)},
                {"believed", o.believed.index},
                {"true_position", o.true_position.index},
                {"vacated", o.vacated.index},
                {"correct", o.correct},
                {"transport_error", p.transport_error}};
    if (p.transport_error) record["error"] = p.error;
    emit(record);
  }

  json result{{"type", "result"},
              {"correct", turn.correct_count},
              {"score", turn.aborted ? json(nullptr) : json(turn.score.to_fixed2())},
              {"parse_failures", turn.parse_failures},
              {"transport_failures", turn.transport_failures},
              {"aborted", turn.aborted}};
  if (turn.aborted) result["abort_reason"] = turn.abort_reason;
  emit(result);
  return out;
}

Aggregate aggregate_reports(const std::filesystem::path& out) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(out)) {
    if (entry.is_regular_file() && entry.path().filename() == "report.json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());

  Aggregate agg;
  agg.summary_csv = kCsvHeader;
  std::map<std::string, AggregateRow> by_model;
  json sources = json::array();
  for (const auto& path : paths) {
    std::ifstream in(path);
    const json report = json::parse(in);
    if (report.value("schema_version", 0) != kReportSchemaVersion) {
      throw std::runtime_error(path.string() + ": unsupported report schema");
    }
    const std::string model = report.at("agent").at("model").get<std::string>();
    const std::string mode = report.at("config").at("mode").get<std::string>();
    const std::string average = report.at("average_score").get<std::string>();

    AggregateRow& row = by_model[model];
    row.model = model;
    (mode == "zero" ? row.zero_average : row.finite_average) = average;

    for (const auto& t : report.at("turns")) {
      agg.summary_csv += csv_row(model, mode, t.at("turn_index").get<std::uint64_t>(), t.at("correct").get<int>(),
                                 t.at("score").is_null() ? "" : t.at("score").get<std::string>(),
                                 t.at("parse_failures").get<int>(), t.at("transport_failures").get<int>());
    }
    sources.push_back(path.lexically_relative(out).generic_string());
  }

  json models = json::array();
  for (auto& [name, row] : by_model) {
    json entry{{"model", name},
               {"zero", row.zero_average ? json(*row.zero_average) : json(nullptr)},
               {"finite", row.finite_average ? json(*row.finite_average) : json(nullptr)}};
    if (row.zero_average && row.finite_average) {
      entry["zero_ge_finite"] = std::stod(*row.zero_average) >= std::stod(*row.finite_average);
    } else {
      entry["zero_ge_finite"] = nullptr;
    }
    models.push_back(std::move(entry));
    agg.rows.push_back(std::move(row));
  }
  agg.table = json{{"schema_version", kReportSchemaVersion}, {"models", std::move(models)}, {"sources", std::move(sources)}};
  return agg;
}

}  // namespace pickstuff
