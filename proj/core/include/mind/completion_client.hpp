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

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mind/error.hpp"
#include "mind/jsonl.hpp"

namespace mind {

/// One chat-completion call: a single user message, no system message.
struct ChatRequest {
  std::string model;
  std::string content;
  double temperature = 1.0;
  double top_p = 0.9;
  std::int64_t max_tokens = 0;
};

struct ChatResponse {
  std::string text;
  std::optional<std::int64_t> prompt_tokens;
  std::optional<std::int64_t> completion_tokens;
  /// finish_reason was "length".
  bool truncated = false;
};

/// {model, messages:[{role:"user", content}], temperature, top_p, max_tokens}
ordered_json to_wire(const ChatRequest& req);

/// Reads choices[0].message.content, finish_reason and usage from an
/// OpenAI-style response body. Throws ProtocolError on malformed bodies.
ChatResponse parse_wire_response(std::string_view body);

/// Anything that answers chat requests. Implementations must be safe to call
/// from several threads at once. Throw TransportError for retryable
/// failures and ProtocolError for the rest.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual ChatResponse complete(const ChatRequest& req) = 0;
};

/// HTTP(S) client for a chat-completions endpoint URL. A bearer token is sent
/// when `api_key` is set.
class HttpCompletionClient final : public CompletionClient {
 public:
  HttpCompletionClient(std::string endpoint_url, std::optional<std::string> api_key,
                       std::chrono::seconds timeout = std::chrono::seconds(300));

  ChatResponse complete(const ChatRequest& req) override;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::optional<std::string> api_key_;
  std::chrono::seconds timeout_;
};

/// Deterministic offline stand-in for a generator or judge endpoint.
///
/// In dialogue mode the reply is a dialogue built from the context part of
/// the prompt, with speakers and turn sizes keyed off the style instruction.
/// A context containing `mock:short=<style>` gets a 10-token reply for that
/// style. Replies are cut to max_tokens whitespace tokens and flagged
/// truncated. In judge mode the reply carries four rubric scores in 2..5
/// derived from a hash of the prompt.
class MockCompletionClient final : public CompletionClient {
 public:
  enum class Mode { kDialogue, kJudge };

  explicit MockCompletionClient(Mode mode = Mode::kDialogue, std::chrono::milliseconds latency = {});

  ChatResponse complete(const ChatRequest& req) override;

  std::size_t calls() const noexcept { return calls_.load(); }
  std::size_t peak_in_flight() const noexcept { return peak_.load(); }

  /// Style key the mock infers from an instruction, or empty.
  static std::string infer_style(std::string_view instruction);

 private:
  Mode mode_;
  std::chrono::milliseconds latency_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> in_flight_{0};
  std::atomic<std::size_t> peak_{0};
};

/// "mock" and "mock-judge" select the mock; anything else is treated as an
/// endpoint URL with the MIND_API_KEY environment variable as credential.
std::unique_ptr<CompletionClient> make_client(const std::string& endpoint,
                                              std::chrono::milliseconds mock_latency = {});

/// Exponential backoff for TransportError. ProtocolError is never retried.
struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_delay{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_delay{30'000};
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to std::this_thread::sleep_for

  std::chrono::milliseconds delay_for(int attempt) const;
};

/// Calls `client.complete(req)` under `policy`, counting retries into
/// `retries`. Rethrows the last TransportError once retries run out.
ChatResponse complete_with_retries(CompletionClient& client, const ChatRequest& req, const RetryPolicy& policy,
                                   int& retries);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data) noexcept;

}  // namespace mind
