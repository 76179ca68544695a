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

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "../support/mock_chat_server.hpp"

namespace pickstuff {
namespace {

using pickstuff::testing::MockChatServer;
using pickstuff::testing::MockReply;

PromptFragment question(std::string text = "Please make your prediction:\n") {
  return {FragmentKind::kQuestion, std::move(text)};
}

TEST(ParsePrediction, Vectors) {
  EXPECT_EQ(parse_prediction("1", 3), Position{1});
  EXPECT_EQ(parse_prediction("  2\n", 3), Position{2});
  EXPECT_EQ(parse_prediction("The user will go to position 0.", 3), Position{0});
  EXPECT_EQ(parse_prediction("position 5 then 1", 3), Position{1});
  EXPECT_EQ(parse_prediction("no idea", 3), std::nullopt);
  EXPECT_EQ(parse_prediction("-1", 3), std::nullopt);
  EXPECT_EQ(parse_prediction("-1 or 2", 3), Position{2});
  EXPECT_EQ(parse_prediction("", 3), std::nullopt);
  EXPECT_EQ(parse_prediction("3", 3), std::nullopt);
  EXPECT_EQ(parse_prediction("007", 8), Position{7});
  EXPECT_EQ(parse_prediction("99999999999999999999 1", 3), Position{1});
  EXPECT_EQ(parse_prediction("1", 0), std::nullopt);
}

TEST(AgentSession, RecordsRolesAndClosing) {
  AgentSession session(std::make_unique<ScriptedAgent>(std::vector<std::string>{"2"}));
  session.notify({FragmentKind::kIntro, "intro"});
  session.notify({FragmentKind::kStateReport, "start"});
  EXPECT_THROW(session.predict({FragmentKind::kEventReport, "x"}, {0, 3, nullptr}), std::invalid_argument);
  const auto p = session.predict(question("q"), {0, 3, nullptr});
  EXPECT_EQ(p.value, Position{2});
  EXPECT_EQ(p.raw, "2");

  const std::vector<TranscriptEntry> expected = {
      {Role::kSystem, "intro"}, {Role::kGame, "start"}, {Role::kGame, "q"}, {Role::kAgent, "2"}};
  EXPECT_EQ(session.transcript(), expected);

  session.close();
  EXPECT_TRUE(session.closed());
  EXPECT_THROW(session.notify({FragmentKind::kFeedback, "late"}), std::logic_error);
  EXPECT_THROW(session.predict(question(), {0, 3, nullptr}), std::logic_error);
}

TEST(AgentSession, TransportFailureStillRecordsAnAnswerSlot) {
  AgentSession session(std::make_unique<ScriptedAgent>(std::vector<std::string>{}));
  const auto p = session.predict(question(), {0, 3, nullptr});
  EXPECT_TRUE(p.transport_error);
  EXPECT_FALSE(p.value);
  ASSERT_EQ(session.transcript().size(), 2u);
  EXPECT_EQ(session.transcript().back(), (TranscriptEntry{Role::kAgent, ""}));
}

TEST(Baselines, OracleFrozenRandom) {
  auto ledger = BeliefLedger::init(3);
  ledger.observe_monitor(1, LockerState(std::vector<Slot>{Slot{1}, Slot{0}, Slot{2}}));
  const QuestionContext ctx{1, 3, &ledger};
  EXPECT_EQ(OracleAgent{}.answer({}, ctx), "0");
  EXPECT_EQ(FrozenBeliefAgent{}.answer({}, ctx), "1");
  EXPECT_THROW(OracleAgent{}.answer({}, {1, 3, nullptr}), std::logic_error);

  RandomAgent a(42), b(42);
  PhiloxStream reference(42, StreamId::kRandomAgent);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.answer({}, {0, 5, nullptr});
    EXPECT_EQ(x, b.answer({}, {0, 5, nullptr}));
    EXPECT_EQ(x, std::to_string(reference.uniform_below(5)));
  }
}

TEST(HumanAgent, EchoesFragmentsAndReadsLines) {
  std::istringstream in("1\n");
  std::ostringstream out;
  AgentSession session(std::make_unique<HumanAgent>(in, out));
  session.notify({FragmentKind::kIntro, "hello\n"});
  EXPECT_EQ(session.predict(question("q?\n"), {0, 2, nullptr}).value, Position{1});
  EXPECT_EQ(out.str(), "hello\nq?\n");
  EXPECT_TRUE(session.predict(question("again\n"), {0, 2, nullptr}).transport_error);
}

TEST(ChatMessages, MergesConsecutiveGameEntries) {
  const std::vector<TranscriptEntry> t = {{Role::kSystem, "rules"},
                                          {Role::kGame, "a"},
                                          {Role::kGame, "b"},
                                          {Role::kAgent, "1"},
                                          {Role::kGame, "c"}};
  const auto m = chat_messages(t);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0], (nlohmann::json{{"role", "system"}, {"content", "rules"}}));
  EXPECT_EQ(m[1], (nlohmann::json{{"role", "user"}, {"content", "ab"}}));
  EXPECT_EQ(m[2], (nlohmann::json{{"role", "assistant"}, {"content", "1"}}));
  EXPECT_EQ(m[3], (nlohmann::json{{"role", "user"}, {"content", "c"}}));

  LlmConfig c;
  c.model = "m";
  const auto req = chat_request(c, t);
  EXPECT_EQ(req["model"], "m");
  EXPECT_EQ(req["temperature"], 0.0);
  EXPECT_THROW(chat_answer(nlohmann::json::object()), TransportError);
}

LlmConfig mock_config(const MockChatServer& server) {
  LlmConfig c;
  c.endpoint = server.endpoint();
  c.model = "mock-model";
  c.api_key_env = "PICKSTUFF_TEST_API_KEY";
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(5);
  return c;
}

TEST(LlmAgent, SendsFullHistoryWithBearerKey) {
  MockChatServer server([](const nlohmann::json&, int) { return MockReply{200, "I think 2."}; });
  ::setenv("PICKSTUFF_TEST_API_KEY", "sk-test-123", 1);
  AgentSession session(std::make_unique<LlmAgent>(mock_config(server)));
  session.notify({FragmentKind::kIntro, "rules"});
  EXPECT_EQ(session.predict(question("q1"), {0, 3, nullptr}).value, Position{2});
  EXPECT_EQ(session.predict(question("q2"), {0, 3, nullptr}).value, Position{2});
  ::unsetenv("PICKSTUFF_TEST_API_KEY");

  const auto reqs = server.requests();
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0].authorization, "Bearer sk-test-123");
  EXPECT_EQ(reqs[0].body["model"], "mock-model");
  EXPECT_EQ(reqs[0].body["messages"].size(), 2u);
  EXPECT_EQ(reqs[1].body["messages"].size(), 4u);  // system, user, assistant, user
  EXPECT_EQ(reqs[1].body["messages"][2]["content"], "I think 2.");
}

TEST(LlmAgent, RetriesServerErrors) {
  MockChatServer server([](const nlohmann::json&, int n) { return n == 1 ? MockReply{500, ""} : MockReply{200, "0"}; });
  LlmAgent agent(mock_config(server));
  EXPECT_EQ(agent.answer(std::vector<TranscriptEntry>{{Role::kGame, "q"}}, {}), "0");
  EXPECT_EQ(server.requests().size(), 2u);
}

TEST(LlmAgent, ClientErrorsAreNotRetried) {
  MockChatServer server([](const nlohmann::json&, int) { return MockReply{400, ""}; });
  AgentSession session(std::make_unique<LlmAgent>(mock_config(server)));
  const auto p = session.predict(question(), {0, 3, nullptr});
  EXPECT_TRUE(p.transport_error);
  EXPECT_NE(p.error.find("HTTP 400"), std::string::npos);
  EXPECT_EQ(server.requests().size(), 1u);
}

TEST(LlmAgent, GivesUpAfterMaxAttempts) {
  MockChatServer server([](const nlohmann::json&, int) { return MockReply{503, ""}; });
  auto c = mock_config(server);
  c.max_attempts = 3;
  LlmAgent agent(c);
  EXPECT_THROW(agent.answer(std::vector<TranscriptEntry>{{Role::kGame, "q"}}, {}), TransportError);
  EXPECT_EQ(server.requests().size(), 3u);
}

TEST(LlmAgent, UnreachableEndpoint) {
  int port = 0;
  {
    MockChatServer server([](const nlohmann::json&, int) { return MockReply{}; });
    port = server.port();
  }
  LlmConfig c;
  c.endpoint = "http://127.0.0.1:" + std::to_string(port);
  c.max_attempts = 2;
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(2);
  LlmAgent agent(c);
  EXPECT_THROW(agent.answer(std::vector<TranscriptEntry>{{Role::kGame, "q"}}, {}), TransportError);
}

}  // namespace
}  // namespace pickstuff
