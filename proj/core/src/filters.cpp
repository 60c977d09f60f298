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

#include "mind/filters.hpp"

#include <array>
#include <regex>

namespace mind {

FilterDecision heuristic_filter(const Conversation& conv, const TokenizerSpec& spec, const FilterOptions& opts) {
  FilterDecision d;
  if (!conv.ok()) {
    d.reason = "generation-failed";
    return d;
  }
  d.token_count = count_tokens(conv.text, spec);
  if (parse_turns(conv.text).empty()) d.flags.emplace_back("zero-turns");
  if (conv.truncated()) d.flags.emplace_back("truncated");

  std::string flags;
  for (const auto& f : d.flags) flags += (flags.empty() ? "" : ",") + f;

  if (d.token_count < opts.min_tokens) {
    d.reason = "below-min-tokens (" + std::to_string(d.token_count) + " < " + std::to_string(opts.min_tokens) + ")";
  } else if (opts.strict && !d.flags.empty()) {
    d.reason = "strict: " + flags;
  } else {
    d.keep = true;
    d.reason = flags.empty() ? "ok" : "ok (flagged: " + flags + ")";
  }
  return d;
}

ordered_json decision_record(const Conversation& conv, const FilterDecision& d) {
  ordered_json j;
  j["doc_id"] = conv.doc_id;
  j["chunk_index"] = conv.chunk_index;
  j["style"] = conv.style;
  j["decision"] = d.keep ? "keep" : "reject";
  j["reason"] = d.reason;
  j["token_count"] = d.token_count;
  return j;
}

namespace {

struct MetricPattern {
  const char* key;
  std::regex re;
};

const std::array<MetricPattern, 4>& metric_patterns() {
  static const auto flags = std::regex::ECMAScript | std::regex::icase;
  // Name, then any run of separators, then a number.
  static const std::array<MetricPattern, 4> patterns = {{
      {"correctness", std::regex(R"(\bcorrectness[\s*:=_|\-]*(\d+(?:\.\d+)?))", flags)},
      {"faithfulness", std::regex(R"(\bfaithfulness[\s*:=_|\-]*(\d+(?:\.\d+)?))", flags)},
      {"information_preservation",
       std::regex(R"(\binformation[\s_\-]*preservation[\s*:=_|\-]*(\d+(?:\.\d+)?))", flags)},
      {"new_knowledge", std::regex(R"(\bnew[\s_\-]*knowledge[\s*:=_|\-]*(\d+(?:\.\d+)?))", flags)},
  }};
  return patterns;
}

}  // namespace

QualityScore parse_score_response(std::string_view text) {
  const std::string s(text);
  std::array<int, 4> values{};
  const auto& patterns = metric_patterns();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    std::smatch m;
    if (!std::regex_search(s, m, patterns[i].re)) {
      throw ScoreParseError(patterns[i].key, std::string("judge reply has no score for ") + patterns[i].key);
    }
    const std::string num = m[1].str();
    if (num.find('.') != std::string::npos) {
      throw ScoreParseError(patterns[i].key, std::string("non-integer score '") + num + "' for " + patterns[i].key);
    }
    const int v = num.size() > 2 ? 99 : std::stoi(num);
    if (v < 1 || v > 5) {
      throw ScoreParseError(patterns[i].key, std::string("score ") + num + " for " + patterns[i].key +
                                                 " is outside 1..5");
    }
    values[i] = v;
  }
  return QualityScore{values[0], values[1], values[2], values[3]};
}

QualityScore score_conversation(std::string_view context, const Conversation& conv, const PromptRegistry& prompts,
                                CompletionClient& judge, const GenerationConfig& cfg, const RetryPolicy& retry) {
  // Judge replies are four short lines; a fixed allowance keeps long
  // contexts from starving the output budget.
  constexpr std::int64_t kJudgeMaxTokens = 256;
  ChatRequest req{cfg.model_name, prompts.render_rubric(context, conv.text), cfg.temperature, cfg.top_p,
                  kJudgeMaxTokens};
  int retries = 0;
  const ChatResponse res = complete_with_retries(judge, req, retry, retries);
  return parse_score_response(res.text);
}

bool quality_gate(double mean, double threshold) noexcept { return mean >= threshold; }

ordered_json score_record(const Conversation& conv, const QualityScore& score) {
  ordered_json j;
  j["doc_id"] = conv.doc_id;
  j["chunk_index"] = conv.chunk_index;
  j["style"] = conv.style;
  j["correctness"] = score.correctness;
  j["faithfulness"] = score.faithfulness;
  j["information_preservation"] = score.information_preservation;
  j["new_knowledge"] = score.new_knowledge;
  j["mean"] = score.mean();
  return j;
}

}  // namespace mind
