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

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "pickstuff/agents.hpp"

namespace pickstuff {

using nlohmann::json;

json chat_messages(std::span<const TranscriptEntry> transcript) {
  json messages = json::array();
  for (const auto& entry : transcript) {
    const char* role = entry.role == Role::kSystem ? "system"
                       : entry.role == Role::kAgent ? "assistant"
                                                    : "user";
    if (entry.role == Role::kGame && !messages.empty() && messages.back()["role"] == "user") {
      messages.back()["content"] = messages.back()["content"].get<std::string>() + entry.text;
      continue;
    }
    messages.push_back({{"role", role}, {"content", entry.text}});
  }
  return messages;
}

json chat_request(const LlmConfig& config, std::span<const TranscriptEntry> transcript) {
  return json{{"model", config.model},
              {"temperature", config.temperature},
              {"messages", chat_messages(transcript)}};
}

std::string chat_answer(const json& response) {
  try {
    return response.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat response: ") + e.what());
  }
}

namespace {

bool retryable_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

std::string LlmAgent::answer(std::span<const TranscriptEntry> transcript, const QuestionContext&) {
  httplib::Client client(config_.endpoint);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = chat_request(config_, transcript).dump();

  std::string last_error = "no attempt made";
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto res = client.Post(config_.path, headers, body, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) {
      json parsed = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
      if (parsed.is_discarded()) throw TransportError("chat response is not JSON");
      return chat_answer(parsed);
    }
    last_error = "HTTP " + std::to_string(res->status);
    if (!retryable_status(res->status)) break;
  }
  throw TransportError(last_error);
}

}  // namespace pickstuff
