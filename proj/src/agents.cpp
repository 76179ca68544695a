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

#include "pickstuff/agents.hpp"

#include <istream>
#include <ostream>

namespace pickstuff {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kGame: return "game";
    case Role::kAgent: return "agent";
  }
  return "unknown";
}

std::optional<Position> parse_prediction(std::string_view raw, int n_slots) {
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] < '0' || raw[i] > '9') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < raw.size() && raw[i] >= '0' && raw[i] <= '9') ++i;
    if (start > 0 && raw[start - 1] == '-') continue;

    std::size_t first = start;
    while (first + 1 < i && raw[first] == '0') ++first;
    if (i - first > 9) continue;  // far beyond any slot count
    int value = 0;
    for (std::size_t k = first; k < i; ++k) value = value * 10 + (raw[k] - '0');
    if (value < n_slots) return Position{value};
  }
  return std::nullopt;
}

AgentSession::AgentSession(std::unique_ptr<Agent> agent) : agent_(std::move(agent)) {
  if (!agent_) throw std::invalid_argument("AgentSession needs an agent");
}

void AgentSession::ensure_open() const {
  if (closed_) throw std::logic_error("agent session is closed");
}

void AgentSession::notify(const PromptFragment& fragment) {
  ensure_open();
  agent_->on_notify(fragment);
  transcript_.push_back(
      {fragment.kind == FragmentKind::kIntro ? Role::kSystem : Role::kGame, fragment.text});
}

Prediction AgentSession::predict(const PromptFragment& question, const QuestionContext& ctx) {
  ensure_open();
  if (question.kind != FragmentKind::kQuestion) {
    throw std::invalid_argument("predict() needs a question fragment");
  }
  agent_->on_notify(question);
  transcript_.push_back({Role::kGame, question.text});

  Prediction prediction;
  try {
    prediction.raw = agent_->answer(transcript_, ctx);
    prediction.value = parse_prediction(prediction.raw, ctx.n_slots);
  } catch (const TransportError& e) {
    prediction.transport_error = true;
    prediction.error = e.what();
  }
  transcript_.push_back({Role::kAgent, prediction.raw});
  return prediction;
}

std::string OracleAgent::answer(std::span<const TranscriptEntry>, const QuestionContext& ctx) {
  if (ctx.ledger == nullptr) throw std::logic_error("oracle agent needs the belief ledger");
  return std::to_string(ctx.ledger->believed_position(ctx.user).index);
}

std::string FrozenBeliefAgent::answer(std::span<const TranscriptEntry>, const QuestionContext& ctx) {
  return std::to_string(ctx.user);
}

std::string RandomAgent::answer(std::span<const TranscriptEntry>, const QuestionContext& ctx) {
  if (ctx.n_slots < 1) throw std::invalid_argument("no slots to choose from");
  return std::to_string(rng_.uniform_below(static_cast<std::uint32_t>(ctx.n_slots)));
}

std::string ScriptedAgent::answer(std::span<const TranscriptEntry>, const QuestionContext&) {
  if (next_ >= answers_.size()) throw TransportError("no recorded answer left");
  return answers_[next_++];
}

void HumanAgent::on_notify(const PromptFragment& fragment) {
  *out_ << fragment.text << std::flush;
}

std::string HumanAgent::answer(std::span<const TranscriptEntry>, const QuestionContext&) {
  std::string line;
  if (!std::getline(*in_, line)) throw TransportError("terminal input closed");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace pickstuff
