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

// pickstuff: command-line front end.
//
//   pickstuff run     --agent oracle|random|frozen|human|llm --mode zero|finite|both ...
//   pickstuff play    interactive game in the terminal
//   pickstuff replay  --script turn.script.jsonl --answers answers.txt
//   pickstuff script  dump the event script of one seeded turn
//   pickstuff report  --out results

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pickstuff/agents.hpp"
#include "pickstuff/harness.hpp"
#include "pickstuff/narrative.hpp"
#include "pickstuff/scheduler.hpp"

namespace {

using namespace pickstuff;

struct SchedulerFlags {
  int shuffles_min = 1;
  int shuffles_max = 3;
  double p_observe = 0.3;
  int max_staleness = 6;

  void add_to(CLI::App& app) {
    app.add_option("--shuffles-min", shuffles_min, "Fewest shuffles between two arrivals")->capture_default_str();
    app.add_option("--shuffles-max", shuffles_max, "Most shuffles between two arrivals")->capture_default_str();
    app.add_option("--p-observe", p_observe, "Chance a waiting user observes during a gap")->capture_default_str();
    app.add_option("--max-staleness", max_staleness, "Largest k in a k-th-to-last snapshot")->capture_default_str();
  }
};

TemplateSet load_templates(const std::string& dir) {
  return dir.empty() ? TemplateSet::builtin() : TemplateSet::with_overrides(dir);
}

void print_side_by_side(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << std::left << std::setw(24) << "model" << std::setw(10) << "mode" << "average_score\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(24) << r.agent.model << std::setw(10) << to_string(r.config.mode)
        << r.average_score.to_fixed2() << (r.complete ? "" : "  (incomplete)") << '\n';
  }
  if (reports.size() == 2) {
    const bool trend = reports[0].average_score.to_double() >= reports[1].average_score.to_double();
    out << "zero >= finite: " << (trend ? "yes" : "no") << '\n';
  }
}

int cmd_run(ExperimentConfig config, const std::string& mode, const std::string& templates_dir) {
  std::vector<Mode> modes;
  if (mode == "both") {
    modes = {Mode::kZero, Mode::kFinite};
  } else {
    modes = {parse_mode(mode)};
  }
  if (!templates_dir.empty()) config.templates_dir = templates_dir;

  AgentFactory factory;
  if (config.agent.kind == "human") {
    factory = [](std::uint64_t) { return std::make_unique<HumanAgent>(std::cin, std::cout); };
  } else {
    factory = default_agent_factory(config.agent);
  }

  std::vector<ExperimentReport> reports;
  for (Mode m : modes) {
    config.mode = m;
    reports.push_back(run_experiment(config, factory));
  }
  print_side_by_side(std::cout, reports);
  if (!config.out_dir.empty()) std::cout << "results written under " << config.out_dir.string() << '\n';
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.complete; }) ? 0 : 3;
}

int cmd_play(const ScriptConfig& config, const std::string& templates_dir) {
  const TemplateSet templates = load_templates(templates_dir);
  const Narrator narrator(templates);
  std::cout << narrator.client_banner();
  for (std::uint64_t turn = 0;; ++turn) {
    AgentSession session(std::make_unique<HumanAgent>(std::cin, std::cout));
    run_game(generate_script(config, turn), session, narrator);
    std::cout << narrator.play_again_prompt() << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) break;
    if (!line.empty() && (line[0] == 'n' || line[0] == 'N')) break;
  }
  return 0;
}

std::vector<std::string> read_answers(const std::string& path, const std::vector<std::string>& inline_answers) {
  std::vector<std::string> answers = inline_answers;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    for (std::string line; std::getline(in, line);) answers.push_back(line);
  }
  return answers;
}

int cmd_replay(const std::string& script_path, const std::string& answers_path,
               const std::vector<std::string>& inline_answers, bool banner, bool play_again,
               const std::string& templates_dir, const std::string& output) {
  std::ifstream in(script_path);
  if (!in) throw std::runtime_error("cannot open " + script_path);
  const EventScript script = script_from_jsonl(in);
  const TemplateSet templates = load_templates(templates_dir);
  const Narrator narrator(templates);

  AgentSession session(std::make_unique<ScriptedAgent>(read_answers(answers_path, inline_answers)));
  int status = 0;
  std::string text = banner ? narrator.client_banner() : "";
  try {
    const TurnReport report = run_game(script, session, narrator);
    text += render_terminal(session.transcript());
    if (play_again) text += narrator.play_again_prompt();
    std::cerr << "correct " << report.correct_count << "/" << report.n_users << ", score "
              << report.score.to_fixed2() << '\n';
  } catch (const GameAborted& e) {
    text += render_terminal(session.transcript());
    std::cerr << "replay aborted: " << e.what() << '\n';
    status = 2;
  }

  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream(output, std::ios::binary) << text;
  }
  return status;
}

int cmd_script(const ScriptConfig& config, std::uint64_t turn) {
  std::cout << to_jsonl(generate_script(config, turn));
  return 0;
}

int cmd_report(const std::string& out) {
  const Aggregate agg = aggregate_reports(out);
  std::ofstream(std::filesystem::path(out) / "summary.csv", std::ios::binary) << agg.summary_csv;
  std::ofstream(std::filesystem::path(out) / "results.json", std::ios::binary) << agg.table.dump(2) << '\n';
  std::cout << std::left << std::setw(24) << "model" << std::setw(10) << "zero" << std::setw(10) << "finite"
            << "zero>=finite\n";
  for (const auto& model : agg.table.at("models")) {
    auto cell = [](const nlohmann::ordered_json& v) { return v.is_null() ? std::string("-") : v.get<std::string>(); };
    const auto& trend = model.at("zero_ge_finite");
    std::cout << std::left << std::setw(24) << model.at("model").get<std::string>() << std::setw(10)
              << cell(model.at("zero")) << std::setw(10) << cell(model.at("finite"))
              << (trend.is_null() ? "-" : (trend.get<bool>() ? "yes" : "no")) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pickstuff: a belief-tracking game for evaluating agents"};
  app.require_subcommand(1);

  // run
  ExperimentConfig run_config;
  run_config.out_dir = "results";
  std::string run_mode = "zero";
  std::string run_templates;
  std::string out_dir = "results";
  int retries = 3;
  int timeout_s = 120;
  SchedulerFlags run_sched;
  auto* run = app.add_subcommand("run", "Run an experiment against one agent");
  run->add_option("--mode", run_mode, "zero | finite | both")
      ->check(CLI::IsMember({"zero", "finite", "both"}))
      ->capture_default_str();
  run->add_option("--users", run_config.n_users, "Users per game")->capture_default_str();
  run->add_option("--turns", run_config.n_turns, "Games per experiment")->capture_default_str();
  run->add_option("--seed", run_config.master_seed, "Master seed of the event scripts")->capture_default_str();
  run->add_option("--agent", run_config.agent.kind, "oracle | random | frozen | human | llm")
      ->check(CLI::IsMember({"oracle", "random", "frozen", "human", "llm"}))
      ->capture_default_str();
  run->add_option("--agent-seed", run_config.agent.seed, "Seed of the random agent")->capture_default_str();
  run->add_option("--endpoint", run_config.agent.llm.endpoint, "Chat endpoint base URL")->capture_default_str();
  run->add_option("--path", run_config.agent.llm.path, "Chat completions path")->capture_default_str();
  run->add_option("--model", run_config.agent.llm.model, "Model name sent to the endpoint");
  run->add_option("--api-key-env", run_config.agent.llm.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  run->add_option("--retries", retries, "Attempts per question")->capture_default_str();
  run->add_option("--timeout", timeout_s, "Request timeout in seconds")->capture_default_str();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--templates", run_templates, "Directory of template overrides");
  run_sched.add_to(*run);

  // play
  ScriptConfig play_config;
  play_config.n_users = 3;
  std::string play_mode = "zero";
  std::string play_templates;
  SchedulerFlags play_sched;
  auto* play = app.add_subcommand("play", "Play interactively as the warehouse manager");
  play->add_option("--mode", play_mode, "zero | finite")->check(CLI::IsMember({"zero", "finite"}))->capture_default_str();
  play->add_option("--users", play_config.n_users, "Users per game")->capture_default_str();
  play->add_option("--seed", play_config.master_seed, "Master seed")->capture_default_str();
  play->add_option("--templates", play_templates, "Directory of template overrides");
  play_sched.add_to(*play);

  // replay
  std::string script_path, answers_path, replay_templates, replay_output;
  std::vector<std::string> inline_answers;
  bool banner = false;
  bool no_play_again = false;
  auto* replay = app.add_subcommand("replay", "Replay a serialized event script with recorded answers");
  replay->add_option("--script", script_path, "Event script (JSONL)")->required();
  replay->add_option("--answers", answers_path, "File with one answer per line");
  replay->add_option("--answer", inline_answers, "Answer, repeatable; used before --answers");
  replay->add_flag("--banner", banner, "Print the game client banner first");
  replay->add_flag("--no-play-again", no_play_again, "Omit the closing play-again prompt");
  replay->add_option("--templates", replay_templates, "Directory of template overrides");
  replay->add_option("-o,--output", replay_output, "Write the transcript here instead of stdout");

  // script
  ScriptConfig script_config;
  std::string script_mode = "zero";
  std::uint64_t script_turn = 0;
  SchedulerFlags script_sched;
  auto* script = app.add_subcommand("script", "Print the event script of one seeded turn");
  script->add_option("--mode", script_mode, "zero | finite")->check(CLI::IsMember({"zero", "finite"}))->capture_default_str();
  script->add_option("--users", script_config.n_users, "Users per game")->capture_default_str();
  script->add_option("--seed", script_config.master_seed, "Master seed")->capture_default_str();
  script->add_option("--turn", script_turn, "Turn index")->capture_default_str();
  script_sched.add_to(*script);

  // report
  std::string report_out = "results";
  auto* report = app.add_subcommand("report", "Aggregate report.json files into summary tables");
  report->add_option("--out", report_out, "Directory holding experiment outputs")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  auto apply_sched = [](ScriptConfig& c, const SchedulerFlags& f) {
    c.shuffles_between_arrivals = {f.shuffles_min, f.shuffles_max};
    c.p_observe = f.p_observe;
    c.max_staleness = f.max_staleness;
  };

  try {
    if (*run) {
      run_config.out_dir = out_dir;
      run_config.shuffles_between_arrivals = {run_sched.shuffles_min, run_sched.shuffles_max};
      run_config.p_observe = run_sched.p_observe;
      run_config.max_staleness = run_sched.max_staleness;
      run_config.agent.llm.max_attempts = retries;
      run_config.agent.llm.timeout = std::chrono::seconds(timeout_s);
      return cmd_run(run_config, run_mode, run_templates);
    }
    if (*play) {
      play_config.mode = parse_mode(play_mode);
      apply_sched(play_config, play_sched);
      return cmd_play(play_config, play_templates);
    }
    if (*replay) {
      return cmd_replay(script_path, answers_path, inline_answers, banner, !no_play_again, replay_templates,
                        replay_output);
    }
    if (*script) {
      script_config.mode = parse_mode(script_mode);
      apply_sched(script_config, script_sched);
      return cmd_script(script_config, script_turn);
    }
    if (*report) return cmd_report(report_out);
  } catch (const std::exception& e) {
    std::cerr << "pickstuff: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
