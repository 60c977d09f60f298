// Copyright 2026 The mind authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mind/completion_client.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace mind {

ordered_json to_wire(const ChatRequest& req) {
  ordered_json j;
  j["model"] = req.model;
  j["messages"] = ordered_json::array({ordered_json{{"role", "user"}, {"content", req.content}}});
  j["temperature"] = req.temperature;
  j["top_p"] = req.top_p;
  j["max_tokens"] = req.max_tokens;
  return j;
}

ChatResponse parse_wire_response(std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("response body is not a JSON object");
  if (auto err = j.find("error"); err != j.end() && !err->is_null()) {
    throw ProtocolError("endpoint returned error: " + dump_line(*err));
  }
  auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) throw ProtocolError("response has no choices");
  const json& choice = (*choices)[0];
  const json* content = nullptr;
  if (auto msg = choice.find("message"); msg != choice.end() && msg->is_object()) {
    if (auto c = msg->find("content"); c != msg->end() && c->is_string()) content = &*c;
  }
  if (content == nullptr) throw ProtocolError("response choice has no message content");

  ChatResponse out;
  out.text = content->get<std::string>();
  if (auto fr = choice.find("finish_reason"); fr != choice.end() && fr->is_string()) {
    out.truncated = fr->get<std::string>() == "length";
  }
  if (auto usage = j.find("usage"); usage != j.end() && usage->is_object()) {
    if (auto p = usage->find("prompt_tokens"); p != usage->end() && p->is_number_integer()) {
      out.prompt_tokens = p->get<std::int64_t>();
    }
    if (auto c = usage->find("completion_tokens"); c != usage->end() && c->is_number_integer()) {
      out.completion_tokens = c->get<std::int64_t>();
    }
  }
  return out;
}

std::unique_ptr<CompletionClient> make_client(const std::string& endpoint, std::chrono::milliseconds mock_latency) {
  if (endpoint == "mock") {
    return std::make_unique<MockCompletionClient>(MockCompletionClient::Mode::kDialogue, mock_latency);
  }
  if (endpoint == "mock-judge") {
    return std::make_unique<MockCompletionClient>(MockCompletionClient::Mode::kJudge, mock_latency);
  }
  std::optional<std::string> key;
  if (const char* env = std::getenv("MIND_API_KEY"); env != nullptr && *env != '\0') key = env;
  return std::make_unique<HttpCompletionClient>(endpoint, std::move(key));
}

std::chrono::milliseconds RetryPolicy::delay_for(int attempt) const {
  const double raw = static_cast<double>(initial_delay.count()) * std::pow(multiplier, attempt);
  const double capped = std::min(raw, static_cast<double>(max_delay.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(capped));
}

ChatResponse complete_with_retries(CompletionClient& client, const ChatRequest& req, const RetryPolicy& policy,
                                   int& retries) {
  retries = 0;
  for (;;) {
    try {
      return client.complete(req);
    } catch (const TransportError&) {
      if (retries >= policy.max_retries) throw;
      const auto delay = policy.delay_for(retries);
      if (policy.sleep) {
        policy.sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
      ++retries;
    }
  }
}

std::uint64_t fnv1a64(std::string_view data) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mind
