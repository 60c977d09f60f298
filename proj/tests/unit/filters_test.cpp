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

#include <gtest/gtest.h>

#include "mind/error.hpp"
#include "mind/filters.hpp"
#include "test_env.hpp"

using namespace mind;

namespace {

Conversation conv_with(std::size_t tokens, bool dialogue = true) {
  Conversation c{"doc", 0, "debate", "", 10, static_cast<std::int64_t>(tokens), GenerationStatus::kOk, json::object()};
  if (dialogue && tokens > 0) c.text = "**A:**";
  for (std::size_t i = c.text.empty() ? 0 : 1; i < tokens; ++i) c.text += (c.text.empty() ? "w" : " w");
  return c;
}

}  // namespace

TEST(HeuristicFilter, ThresholdIsInclusiveAtFifty) {
  const TokenizerSpec spec;
  EXPECT_FALSE(heuristic_filter(conv_with(49), spec).keep);
  EXPECT_TRUE(heuristic_filter(conv_with(50), spec).keep);
  EXPECT_TRUE(heuristic_filter(conv_with(500), spec).keep);
  EXPECT_FALSE(heuristic_filter(conv_with(0), spec).keep);
  const auto d = heuristic_filter(conv_with(49), spec);
  EXPECT_EQ(d.reason, "below-min-tokens (49 < 50)");
  EXPECT_EQ(d.token_count, 49u);
}

TEST(HeuristicFilter, CustomThreshold) {
  FilterOptions opts;
  opts.min_tokens = 10;
  EXPECT_TRUE(heuristic_filter(conv_with(10), TokenizerSpec{}, opts).keep);
  EXPECT_FALSE(heuristic_filter(conv_with(9), TokenizerSpec{}, opts).keep);
}

TEST(HeuristicFilter, FlagsOnlyRejectInStrictMode) {
  auto c = conv_with(60, /*dialogue=*/false);
  c.meta["truncated"] = true;
  auto lenient = heuristic_filter(c, TokenizerSpec{});
  EXPECT_TRUE(lenient.keep);
  EXPECT_EQ(lenient.reason, "ok (flagged: zero-turns,truncated)");
  FilterOptions strict;
  strict.strict = true;
  auto d = heuristic_filter(c, TokenizerSpec{}, strict);
  EXPECT_FALSE(d.keep);
  EXPECT_EQ(d.reason, "strict: zero-turns,truncated");
}

TEST(HeuristicFilter, FailedGenerationsAreRejected) {
  auto c = conv_with(100);
  c.status = GenerationStatus::kFailed;
  const auto d = heuristic_filter(c, TokenizerSpec{});
  EXPECT_FALSE(d.keep);
  EXPECT_EQ(d.reason, "generation-failed");
}

TEST(HeuristicFilter, DecisionRecordShape) {
  const auto d = heuristic_filter(conv_with(50), TokenizerSpec{});
  EXPECT_EQ(dump_line(decision_record(conv_with(50), d)),
            R"({"doc_id":"doc","chunk_index":0,"style":"debate","decision":"keep","reason":"ok","token_count":50})");
}

TEST(QualityGate, MeanOfThreeIsKept) {
  EXPECT_FALSE(quality_gate(2.99));
  EXPECT_TRUE(quality_gate(3.00));
  EXPECT_TRUE(quality_gate(QualityScore{3, 3, 3, 3}));
  EXPECT_FALSE(quality_gate(QualityScore{3, 3, 3, 2}));
  EXPECT_TRUE(quality_gate(QualityScore{5, 1, 4, 2}));
  EXPECT_DOUBLE_EQ((QualityScore{5, 1, 4, 2}.mean()), 3.0);
}

TEST(ScoreParser, PlainLines) {
  const auto s = parse_score_response("Correctness: 4\nFaithfulness: 5\nInformation Preservation: 3\nNew Knowledge: 2");
  EXPECT_EQ(s, (QualityScore{4, 5, 3, 2}));
}

TEST(ScoreParser, MarkdownAndOtherSeparators) {
  const auto s = parse_score_response(
      "Here are my scores.\n- **Correctness**: 5\n- **faithfulness** = 4\n* information_preservation - 3\n"
      "NEW-KNOWLEDGE | 1\nThanks.");
  EXPECT_EQ(s, (QualityScore{5, 4, 3, 1}));
}

TEST(ScoreParser, SkipsEchoedRubricText) {
  const auto s = parse_score_response(
      "Correctness: numbers are accurate\nCorrectness: 4\nFaithfulness: 4\nInformation Preservation: 4\nNew Knowledge: 4");
  EXPECT_EQ(s.correctness, 4);
}

TEST(ScoreParser, ErrorsNameTheMetric) {
  try {
    parse_score_response("Correctness: 4\nFaithfulness: 4\nNew Knowledge: 4");
    FAIL();
  } catch (const ScoreParseError& e) {
    EXPECT_EQ(e.metric(), "information_preservation");
  }
  try {
    parse_score_response("Correctness: 7\nFaithfulness: 4\nInformation Preservation: 4\nNew Knowledge: 4");
    FAIL();
  } catch (const ScoreParseError& e) {
    EXPECT_EQ(e.metric(), "correctness");
  }
  try {
    parse_score_response("Correctness: 4\nFaithfulness: 3.5\nInformation Preservation: 4\nNew Knowledge: 4");
    FAIL();
  } catch (const ScoreParseError& e) {
    EXPECT_EQ(e.metric(), "faithfulness");
  }
  EXPECT_THROW(parse_score_response("Correctness: 0\nFaithfulness: 4\nInformation Preservation: 4\nNew Knowledge: 4"),
               ValidationError);
}

TEST(ScoreConversation, MockJudgeIsDeterministic) {
  MockCompletionClient judge(MockCompletionClient::Mode::kJudge);
  const auto c = conv_with(80);
  const auto a = score_conversation("raw context", c, testenv::prompts(), judge, GenerationConfig{});
  const auto b = score_conversation("raw context", c, testenv::prompts(), judge, GenerationConfig{});
  EXPECT_EQ(a, b);
  const auto rec = score_record(c, a);
  EXPECT_DOUBLE_EQ(rec["mean"].get<double>(), a.mean());
}
