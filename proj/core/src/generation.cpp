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

#include "mind/generation.hpp"

#include <cstdio>
#include <sstream>

namespace mind {

void GenerationConfig::validate(const TokenizerSpec& spec) const {
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw ConfigError("top-p must lie in (0, 1]");
  if (max_retries < 0) throw ConfigError("max-retries must be >= 0");
  if (max_in_flight == 0) throw ConfigError("max-in-flight must be positive");
  const auto needed = static_cast<std::int64_t>(spec.window) + kMinOutputHeadroom;
  if (total_token_limit < needed) {
    throw ConfigError("token limit " + std::to_string(total_token_limit) + " cannot hold a " +
                      std::to_string(spec.window) + "-token window plus " + std::to_string(kMinOutputHeadroom) +
                      " output tokens");
  }
}

std::string GenerationConfig::digest() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << model_name << '|' << temperature << '|' << top_p << '|' << total_token_limit;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(ss.str())));
  return buf;
}

std::int64_t max_output_budget(std::int64_t prompt_tokens, const GenerationConfig& cfg) {
  if (prompt_tokens < 0) throw ValidationError("prompt token count must be nonnegative");
  if (prompt_tokens >= cfg.total_token_limit) {
    throw BudgetExhausted("prompt uses " + std::to_string(prompt_tokens) + " of " +
                          std::to_string(cfg.total_token_limit) + " tokens; no room for output");
  }
  return cfg.total_token_limit - prompt_tokens;
}

std::string ConversationKey::to_manifest_line() const {
  if (doc_id.find_first_of("\t\n\r") != std::string::npos || style.find_first_of("\t\n\r") != std::string::npos) {
    throw ValidationError("key fields may not contain tabs or newlines: '" + doc_id + "'");
  }
  return doc_id + '\t' + std::to_string(chunk_index) + '\t' + style;
}

ConversationKey ConversationKey::from_manifest_line(std::string_view line) {
  const auto a = line.find('\t');
  const auto b = a == std::string_view::npos ? a : line.find('\t', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos || line.find('\t', b + 1) != std::string_view::npos) {
    throw ValidationError("malformed manifest line: " + std::string(line));
  }
  ConversationKey key;
  key.doc_id = std::string(line.substr(0, a));
  const std::string idx(line.substr(a + 1, b - a - 1));
  std::size_t used = 0;
  try {
    key.chunk_index = std::stoull(idx, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (idx.empty() || used != idx.size()) throw ValidationError("malformed chunk index in manifest: " + idx);
  key.style = std::string(line.substr(b + 1));
  return key;
}

bool key_before(const ConversationKey& a, const ConversationKey& b) noexcept {
  if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
  if (a.chunk_index != b.chunk_index) return a.chunk_index < b.chunk_index;
  return style_before(a.style, b.style);
}

bool Conversation::truncated() const {
  auto it = meta.find("truncated");
  return it != meta.end() && it->is_boolean() && it->get<bool>();
}

ordered_json to_json(const Conversation& c) {
  ordered_json j;
  j["doc_id"] = c.doc_id;
  j["chunk_index"] = c.chunk_index;
  j["style"] = c.style;
  j["text"] = c.text;
  j["prompt_tokens"] = c.prompt_tokens;
  j["output_tokens"] = c.output_tokens;
  j["status"] = c.ok() ? "ok" : "failed";
  j["meta"] = ordered_json(c.meta);
  return j;
}

Conversation conversation_from_json(const json& j) {
  Conversation c;
  try {
    c.doc_id = j.at("doc_id").get<std::string>();
    c.chunk_index = j.at("chunk_index").get<std::size_t>();
    c.style = j.at("style").get<std::string>();
    c.text = j.at("text").get<std::string>();
    c.prompt_tokens = j.at("prompt_tokens").get<std::int64_t>();
    c.output_tokens = j.at("output_tokens").get<std::int64_t>();
    const auto status = j.at("status").get<std::string>();
    if (status == "ok") {
      c.status = GenerationStatus::kOk;
    } else if (status == "failed") {
      c.status = GenerationStatus::kFailed;
    } else {
      throw ValidationError("unknown status '" + status + "'");
    }
    if (auto m = j.find("meta"); m != j.end() && m->is_object()) c.meta = *m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed conversation record: ") + e.what());
  }
  return c;
}

std::vector<Conversation> read_conversations(const std::filesystem::path& path) {
  std::vector<Conversation> out;
  for_each_line(path, [&](std::string_view line, std::size_t lineno) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": invalid JSON");
    }
    out.push_back(conversation_from_json(j));
  });
  return out;
}

void write_conversations(const std::filesystem::path& path, const std::vector<Conversation>& convs) {
  std::string content;
  for (const auto& c : convs) {
    content += dump_line(to_json(c));
    content += '\n';
  }
  write_file_atomic(path, content);
}

ConversationGenerator::ConversationGenerator(const PromptRegistry& prompts, TokenizerSpec spec, GenerationConfig cfg,
                                             CompletionClient& client, RetryPolicy retry)
    : prompts_(prompts), spec_(std::move(spec)), cfg_(std::move(cfg)), client_(client), retry_(std::move(retry)) {
  spec_.validate();
  cfg_.validate(spec_);
  retry_.max_retries = cfg_.max_retries;
  digest_ = cfg_.digest();
}

Conversation ConversationGenerator::generate(const Chunk& chunk, std::string_view style) const {
  Conversation conv;
  conv.doc_id = chunk.doc_id;
  conv.chunk_index = chunk.index;
  conv.style = std::string(style);
  conv.meta["gen_config_digest"] = digest_;

  auto fail = [&](std::string_view error, const std::string& reason) {
    conv.status = GenerationStatus::kFailed;
    conv.text.clear();
    conv.output_tokens = 0;
    conv.meta["error"] = error;
    conv.meta["reason"] = reason;
    return conv;
  };

  std::string prompt;
  try {
    prompt = prompts_.render(style, chunk.text);
  } catch (const ValidationError& e) {
    return fail("invalid-context", e.what());
  }
  conv.prompt_tokens = static_cast<std::int64_t>(count_tokens(prompt, spec_));

  std::int64_t budget = 0;
  try {
    budget = max_output_budget(conv.prompt_tokens, cfg_);
  } catch (const BudgetExhausted& e) {
    return fail("budget-exhausted", e.what());
  }

  ChatRequest req{cfg_.model_name, std::move(prompt), cfg_.temperature, cfg_.top_p, budget};
  int retries = 0;
  ChatResponse res;
  try {
    res = complete_with_retries(client_, req, retry_, retries);
  } catch (const TransportError& e) {
    conv.meta["retry_count"] = retries;
    return fail("transport", e.what());
  } catch (const ProtocolError& e) {
    conv.meta["retry_count"] = retries;
    return fail("protocol", e.what());
  }
  conv.meta["retry_count"] = retries;
  conv.meta["truncated"] = res.truncated;

  conv.text = std::move(res.text);
  conv.output_tokens = res.completion_tokens.value_or(static_cast<std::int64_t>(count_tokens(conv.text, spec_)));
  if (conv.prompt_tokens + conv.output_tokens > cfg_.total_token_limit) {
    return fail("budget-overrun", "endpoint returned " + std::to_string(conv.output_tokens) +
                                      " output tokens; allowance was " + std::to_string(budget));
  }
  conv.status = GenerationStatus::kOk;
  return conv;
}

}  // namespace mind
