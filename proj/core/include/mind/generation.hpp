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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mind/completion_client.hpp"
#include "mind/corpus.hpp"
#include "mind/jsonl.hpp"
#include "mind/prompts.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

/// Smallest output allowance a generation config must leave after a full
/// window of input; equals the heuristic filter's default minimum.
inline constexpr std::int64_t kMinOutputHeadroom = 50;

/// Sampling and transport settings for the generator.
struct GenerationConfig {
  double temperature = 1.0;
  double top_p = 0.9;
  std::int64_t total_token_limit = 4096;  // prompt + output
  std::string model_name = "generator";
  int max_retries = 3;
  std::size_t max_in_flight = 8;

  /// Throws ConfigError when a setting is out of range or the limit cannot
  /// hold one window plus kMinOutputHeadroom.
  void validate(const TokenizerSpec& spec) const;

  /// Short stable hash of the settings that shape model output.
  std::string digest() const;
};

/// Returns total_token_limit - prompt_tokens; throws BudgetExhausted when the
/// prompt alone reaches the limit.
std::int64_t max_output_budget(std::int64_t prompt_tokens, const GenerationConfig& cfg);

struct ConversationKey {
  std::string doc_id;
  std::size_t chunk_index = 0;
  std::string style;

  friend auto operator<=>(const ConversationKey&, const ConversationKey&) = default;
  friend bool operator==(const ConversationKey&, const ConversationKey&) = default;

  /// "doc_id\tchunk_index\tstyle", the job manifest line format.
  std::string to_manifest_line() const;
  static ConversationKey from_manifest_line(std::string_view line);
};

/// Sorts by (doc_id, chunk_index) then canonical style order.
bool key_before(const ConversationKey& a, const ConversationKey& b) noexcept;

enum class GenerationStatus { kOk, kFailed };

/// One generated dialogue. `meta` carries gen_config_digest, retry_count,
/// truncated and, for failures, error and reason.
struct Conversation {
  std::string doc_id;
  std::size_t chunk_index = 0;
  std::string style;
  std::string text;
  std::int64_t prompt_tokens = 0;
  std::int64_t output_tokens = 0;
  GenerationStatus status = GenerationStatus::kOk;
  json meta = json::object();

  ConversationKey key() const { return {doc_id, chunk_index, style}; }
  bool ok() const noexcept { return status == GenerationStatus::kOk; }
  bool truncated() const;
};

ordered_json to_json(const Conversation& c);
Conversation conversation_from_json(const json& j);

/// Reads a conversation shard. Throws ValidationError on malformed lines.
std::vector<Conversation> read_conversations(const std::filesystem::path& path);
void write_conversations(const std::filesystem::path& path, const std::vector<Conversation>& convs);

/// Turns (chunk, style) into a Conversation by rendering the prompt and
/// calling the endpoint under the token budget and retry policy.
class ConversationGenerator {
 public:
  ConversationGenerator(const PromptRegistry& prompts, TokenizerSpec spec, GenerationConfig cfg,
                        CompletionClient& client, RetryPolicy retry = {});

  /// Never throws for per-record failures: budget exhaustion, exhausted
  /// retries and protocol errors come back as failed records. Unknown
  /// styles throw ConfigError.
  Conversation generate(const Chunk& chunk, std::string_view style) const;

  const GenerationConfig& config() const noexcept { return cfg_; }
  const TokenizerSpec& tokenizer_spec() const noexcept { return spec_; }
  const PromptRegistry& prompts() const noexcept { return prompts_; }

 private:
  const PromptRegistry& prompts_;
  TokenizerSpec spec_;
  GenerationConfig cfg_;
  CompletionClient& client_;
  RetryPolicy retry_;
  std::string digest_;
};

}  // namespace mind
