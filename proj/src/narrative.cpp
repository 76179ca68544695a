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

#include "pickstuff/narrative.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pickstuff {

namespace detail {
const std::map<std::string, std::string>& builtin_templates();
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool is_placeholder_char(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

}  // namespace

std::string_view to_string(FragmentKind kind) {
  switch (kind) {
    case FragmentKind::kIntro: return "intro";
    case FragmentKind::kStateReport: return "state_report";
    case FragmentKind::kEventReport: return "event_report";
    case FragmentKind::kQuestion: return "question";
    case FragmentKind::kFeedback: return "feedback";
    case FragmentKind::kGameOver: return "game_over";
  }
  return "unknown";
}

std::string ordinal(int n) {
  if (n < 0) throw std::invalid_argument("ordinal of a negative number");
  const int last_two = n % 100;
  const char* suffix = "th";
  if (last_two < 11 || last_two > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

std::string fill_template(std::string_view text, const TemplateValues& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && is_placeholder_char(text[j])) ++j;
      if (j < text.size() && text[j] == '}' && j > i + 1) {
        const std::string_view name = text.substr(i + 1, j - i - 1);
        const auto it = values.find(name);
        if (it == values.end()) {
          throw std::invalid_argument("no value for template placeholder {" + std::string(name) + "}");
        }
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set = [] {
    TemplateSet s;
    for (const auto& [name, text] : detail::builtin_templates()) s.texts_.emplace(name, text);
    return s;
  }();
  return set;
}

TemplateSet TemplateSet::with_overrides(const std::filesystem::path& dir) {
  TemplateSet set = builtin();
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    set.texts_[entry.path().stem().string()] = buf.str();
  }
  return set;
}

const std::string& TemplateSet::get(std::string_view name) const {
  const auto it = texts_.find(name);
  if (it == texts_.end()) throw std::out_of_range("unknown template '" + std::string(name) + "'");
  return it->second;
}

std::string TemplateSet::render(std::string_view name, const TemplateValues& values) const {
  return fill_template(get(name), values);
}

PromptFragment Narrator::intro(Mode mode) const {
  return {FragmentKind::kIntro, templates_->get(mode == Mode::kZero ? "intro_zero" : "intro_finite")};
}

PromptFragment Narrator::game_start(int n_users) const {
  std::string placements;
  for (int u = 0; u < n_users; ++u) {
    placements += templates_->render("placement", {{"user", std::to_string(u)}, {"position", ordinal(u)}});
  }
  return {FragmentKind::kStateReport,
          templates_->render("game_start",
                             {{"n_users", std::to_string(n_users)}, {"placements", placements}})};
}

std::string Narrator::state_report(const LockerState& state) const {
  std::string out;
  for (int i = 0; i < state.size(); ++i) {
    if (i > 0) out += '\n';
    const Slot& slot = state.at(Position{i});
    if (slot) {
      out += templates_->render("slot_item", {{"position", ordinal(i)}, {"user", std::to_string(*slot)}});
    } else {
      out += templates_->render("slot_empty", {{"position", ordinal(i)}});
    }
  }
  return out;
}

PromptFragment Narrator::event(const GameEvent& event, const LockerState& state_after) const {
  return std::visit(
      Overloaded{
          [&](const Shuffle&) {
            return PromptFragment{FragmentKind::kEventReport,
                                  templates_->render("shuffle", {{"state", state_report(state_after)}})};
          },
          [&](const MonitorVisit& e) {
            return PromptFragment{FragmentKind::kEventReport,
                                  templates_->render("monitor_visit", {{"user", std::to_string(e.user)}})};
          },
          [&](const SnapshotView& e) {
            return PromptFragment{
                FragmentKind::kEventReport,
                templates_->render("snapshot_view",
                                   {{"user", std::to_string(e.user)}, {"k", ordinal(e.k_from_last)}})};
          },
          [&](const Arrival& e) {
            return PromptFragment{FragmentKind::kQuestion,
                                  templates_->render("arrival", {{"user", std::to_string(e.user)}}) +
                                      templates_->get("question")};
          },
      },
      event);
}

PromptFragment Narrator::feedback(const RetrievalOutcome& outcome, const LockerState& state_after) const {
  TemplateValues values{{"user", std::to_string(outcome.user)},
                        {"true_position", ordinal(outcome.true_position.index)},
                        {"believed", ordinal(outcome.believed.index)},
                        {"state", state_report(state_after)}};
  if (outcome.predicted) values["predicted"] = ordinal(outcome.predicted->index);
  const char* name = !outcome.predicted ? "feedback_invalid"
                     : outcome.correct  ? "feedback_correct"
                                        : "feedback_incorrect";
  return {FragmentKind::kFeedback, templates_->render(name, values)};
}

PromptFragment Narrator::game_over(int correct, std::string_view score) const {
  return {FragmentKind::kGameOver,
          templates_->render("game_over", {{"correct", std::to_string(correct)}, {"score", std::string(score)}})};
}

}  // namespace pickstuff
