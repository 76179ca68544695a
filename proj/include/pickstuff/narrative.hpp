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

// English rendering of the game. All wording lives in templates/*.txt, which
// are compiled into the binary and may be overridden from a directory.
// Placeholders are written {name}.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "pickstuff/engine.hpp"
#include "pickstuff/scheduler.hpp"

namespace pickstuff {

enum class FragmentKind { kIntro, kStateReport, kEventReport, kQuestion, kFeedback, kGameOver };

std::string_view to_string(FragmentKind kind);

struct PromptFragment {
  FragmentKind kind = FragmentKind::kEventReport;
  std::string text;
};

/// "0th", "1st", "2nd", "3rd", "4th", ..., "11th", "21st".
std::string ordinal(int n);

using TemplateValues = std::map<std::string, std::string, std::less<>>;

/// Substitutes every {name}. Throws std::invalid_argument on a placeholder
/// without a value.
std::string fill_template(std::string_view text, const TemplateValues& values);

class TemplateSet {
 public:
  /// The templates shipped with the build.
  static const TemplateSet& builtin();

  /// Builtins overridden by every *.txt file found in `dir`.
  static TemplateSet with_overrides(const std::filesystem::path& dir);

  /// Throws std::out_of_range for an unknown template name.
  const std::string& get(std::string_view name) const;
  std::string render(std::string_view name, const TemplateValues& values) const;

  /// Contents of version.txt.
  const std::string& version() const { return get("version"); }

 private:
  std::map<std::string, std::string, std::less<>> texts_;
};

class Narrator {
 public:
  explicit Narrator(const TemplateSet& templates = TemplateSet::builtin()) : templates_(&templates) {}

  PromptFragment intro(Mode mode) const;
  PromptFragment game_start(int n_users) const;
  /// One line per slot in ascending order, joined by '\n' (no trailing newline).
  std::string state_report(const LockerState& state) const;
  /// `state_after` is the engine state once the event has been applied. An
  /// Arrival renders as the Question fragment that asks for the prediction.
  PromptFragment event(const GameEvent& event, const LockerState& state_after) const;
  PromptFragment feedback(const RetrievalOutcome& outcome, const LockerState& state_after) const;
  /// `score` is already formatted.
  PromptFragment game_over(int correct, std::string_view score) const;
  std::string play_again_prompt() const { return templates_->get("play_again"); }
  std::string client_banner() const { return templates_->get("client_banner"); }

  const TemplateSet& templates() const { return *templates_; }

 private:
  const TemplateSet* templates_;
};

}  // namespace pickstuff
