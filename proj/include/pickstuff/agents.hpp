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

// The agent contract plus its implementations: scripted baselines, a human at
// a terminal, and a remote chat-completions model.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pickstuff/beliefs.hpp"
#include "pickstuff/narrative.hpp"
#include "pickstuff/philox.hpp"

namespace pickstuff {

enum class Role { kSystem, kGame, kAgent };

std::string_view to_string(Role role);

struct TranscriptEntry {
  Role role = Role::kGame;
  std::string text;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Prediction {
  std::optional<Position> value;
  std::string raw;
  bool transport_error = false;
  std::string error;
};

/// First maximal run of decimal digits whose value lies in [0, n_slots).
/// A run directly preceded by '-' is negative and skipped. Total: never throws.
std::optional<Position> parse_prediction(std::string_view raw, int n_slots);

/// What the harness exposes to an agent when it asks a question. Only the
/// oracle baseline reads the ledger.
struct QuestionContext {
  UserId user = 0;
  int n_slots = 0;
  const BeliefLedger* ledger = nullptr;
};

/// Failure to obtain an answer at all (network, closed input, ...).
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AgentIdentity {
  std::string kind;
  std::string model;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual AgentIdentity identity() const = 0;
  /// Every fragment, questions included, is shown here first.
  virtual void on_notify(const PromptFragment&) {}
  /// Raw answer to the last question in `transcript`. Throws TransportError.
  virtual std::string answer(std::span<const TranscriptEntry> transcript, const QuestionContext& ctx) = 0;
};

/// Transcript owner for one game. Intro fragments are recorded with the
/// system role, everything else the game emits with the game role.
class AgentSession {
 public:
  explicit AgentSession(std::unique_ptr<Agent> agent);

  /// Throws std::logic_error once closed.
  void notify(const PromptFragment& fragment);
  /// Records the question and exactly one agent entry (empty on transport
  /// failure). Throws std::invalid_argument unless question.kind is kQuestion.
  Prediction predict(const PromptFragment& question, const QuestionContext& ctx);
  void close() { closed_ = true; }
  bool closed() const { return closed_; }

  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  AgentIdentity identity() const { return agent_->identity(); }

 private:
  void ensure_open() const;

  std::unique_ptr<Agent> agent_;
  std::vector<TranscriptEntry> transcript_;
  bool closed_ = false;
};

/// Answers the ground-truth believed position.
class OracleAgent final : public Agent {
 public:
  AgentIdentity identity() const override { return {"oracle", "oracle"}; }
  std::string answer(std::span<const TranscriptEntry>, const QuestionContext& ctx) override;
};

/// Answers every user's initial position, ignoring all observations.
class FrozenBeliefAgent final : public Agent {
 public:
  AgentIdentity identity() const override { return {"frozen", "frozen"}; }
  std::string answer(std::span<const TranscriptEntry>, const QuestionContext& ctx) override;
};

/// Uniform over [0, n_slots), drawn from StreamId::kRandomAgent.
class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed, StreamId::kRandomAgent) {}
  AgentIdentity identity() const override { return {"random", "random"}; }
  std::string answer(std::span<const TranscriptEntry>, const QuestionContext& ctx) override;

 private:
  PhiloxStream rng_;
};

/// Replays recorded answers in order.
class ScriptedAgent final : public Agent {
 public:
  explicit ScriptedAgent(std::vector<std::string> answers, std::string model = "scripted")
      : answers_(std::move(answers)), model_(std::move(model)) {}
  AgentIdentity identity() const override { return {"scripted", model_}; }
  std::string answer(std::span<const TranscriptEntry>, const QuestionContext&) override;

 private:
  std::vector<std::string> answers_;
  std::size_t next_ = 0;
  std::string model_;
};

/// Prints the game to `out` and reads one line from `in` per question.
class HumanAgent final : public Agent {
 public:
  HumanAgent(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}
  AgentIdentity identity() const override { return {"human", "human"}; }
  void on_notify(const PromptFragment& fragment) override;
  std::string answer(std::span<const TranscriptEntry>, const QuestionContext&) override;

 private:
  std::istream* in_;
  std::ostream* out_;
};

struct LlmConfig {
  std::string endpoint = "http://localhost:11434";  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::seconds timeout{120};
};

/// Chat messages for a transcript: system entries as "system", runs of game
/// entries merged into one "user" message, agent entries as "assistant".
nlohmann::json chat_messages(std::span<const TranscriptEntry> transcript);
nlohmann::json chat_request(const LlmConfig& config, std::span<const TranscriptEntry> transcript);
/// choices[0].message.content. Throws TransportError when absent.
std::string chat_answer(const nlohmann::json& response);

/// Holds no conversation state: every request resends the whole transcript.
class LlmAgent final : public Agent {
 public:
  explicit LlmAgent(LlmConfig config) : config_(std::move(config)) {}
  AgentIdentity identity() const override { return {"llm", config_.model}; }
  std::string answer(std::span<const TranscriptEntry> transcript, const QuestionContext&) override;

 private:
  LlmConfig config_;
};

}  // namespace pickstuff
