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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mind/completion_client.hpp"
#include "mind/generation.hpp"
#include "mind/prompts.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

inline constexpr std::size_t kDefaultMinTokens = 50;
inline constexpr double kDefaultQualityThreshold = 3.0;

struct FilterOptions {
  std::size_t min_tokens = kDefaultMinTokens;
  /// Reject, rather than only flag, zero-turn and truncated generations.
  bool strict = false;
};

struct FilterDecision {
  bool keep = false;
  std::string reason;
  std::size_t token_count = 0;
  std::vector<std::string> flags;  // "zero-turns", "truncated"
};

/// Length heuristic: rejects iff the conversation has fewer than
/// `min_tokens` tokens. Failed generations are rejected outright.
FilterDecision heuristic_filter(const Conversation& conv, const TokenizerSpec& spec, const FilterOptions& opts = {});

/// {"doc_id","chunk_index","style","decision","reason","token_count"}
ordered_json decision_record(const Conversation& conv, const FilterDecision& d);

struct DialogueTurn {
  std::string speaker;
  std::string text;
  std::size_t ordinal = 0;

  friend bool operator==(const DialogueTurn&, const DialogueTurn&) = default;
};

/// Splits a generated dialogue into speaker turns.
///
/// Recognised markers at the start of a line (leading whitespace ignored):
/// `**Speaker:**`, `**Speaker**:` and plain `Speaker:`. `**Turn N**` lines are
/// section headers and never turns. When any bold speaker marker is present
/// only bold markers start turns, so prose such as "Note: ..." inside a turn
/// stays put. Text before the first marker is dropped; other lines continue
/// the current turn.
std::vector<DialogueTurn> parse_turns(std::string_view text);

/// `**Speaker:** text` blocks separated by blank lines; parse_turns reads it back unchanged.
std::string serialize_turns(const std::vector<DialogueTurn>& turns);

/// The four rubric scores, each 1..5.
struct QualityScore {
  int correctness = 0;
  int faithfulness = 0;
  int information_preservation = 0;
  int new_knowledge = 0;

  double mean() const noexcept {
    return (correctness + faithfulness + information_preservation + new_knowledge) / 4.0;
  }
  friend bool operator==(const QualityScore&, const QualityScore&) = default;
};

/// Finds "<metric name> <integer>" for each metric, case-insensitively and
/// anywhere in the reply; separators such as ':', '**', '-' or '=' may sit
/// between name and number. Throws ScoreParseError naming the first missing,
/// non-integer or out-of-range metric.
QualityScore parse_score_response(std::string_view text);

/// Renders the rubric with the context and conversation, asks the judge and
/// parses the reply. Transport errors are retried per `retry`.
QualityScore score_conversation(std::string_view context, const Conversation& conv, const PromptRegistry& prompts,
                                CompletionClient& judge, const GenerationConfig& cfg, const RetryPolicy& retry = {});

bool quality_gate(double mean, double threshold = kDefaultQualityThreshold) noexcept;
inline bool quality_gate(const QualityScore& score, double threshold = kDefaultQualityThreshold) noexcept {
  return quality_gate(score.mean(), threshold);
}

/// Conversation key plus the four scores and their mean.
ordered_json score_record(const Conversation& conv, const QualityScore& score);

}  // namespace mind
