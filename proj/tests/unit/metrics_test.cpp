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

#include "mind/analysis.hpp"
#include "mind/error.hpp"
#include "oracles.hpp"

using namespace mind;

// Frozen values from tests/oracles/derive_expected.py.
TEST(Bleu, ShortCandidateWithBrevityPenalty) {
  EXPECT_NEAR(bleu("the cat sat on the mat today", "the cat sat on the mat"), 0.84648172489061402, 1e-12);
}

TEST(Bleu, IdentityAndDisjoint) {
  EXPECT_DOUBLE_EQ(bleu("a b c d e", "a b c d e"), 1.0);
  EXPECT_EQ(bleu("a b c d e", "v w x y z"), 0.0);
}

TEST(Bleu, MissingHigherOrderGivesZero) {
  EXPECT_EQ(bleu("a b c d", "d c b a"), 0.0);
}

TEST(Bleu, CandidatesShorterThanFourUseAvailableOrders) {
  EXPECT_DOUBLE_EQ(bleu("a b", "a b"), 1.0);
  EXPECT_DOUBLE_EQ(bleu("a", "a"), 1.0);
  // one unigram of two matches, no brevity penalty: sqrt(1/2 * 0) = 0
  EXPECT_EQ(bleu("a b", "a c"), 0.0);
}

TEST(Bleu, CaseInsensitive) { EXPECT_DOUBLE_EQ(bleu("The Cat", "the cat"), 1.0); }

TEST(Bleu, EmptySideIsValidationError) {
  EXPECT_THROW(bleu("", "a"), ValidationError);
  EXPECT_THROW(bleu("a", "  "), ValidationError);
}

TEST(Rouge, LcsExample) { EXPECT_DOUBLE_EQ(rouge("a b c d", "a b x d").rougeL_f, 0.75); }

TEST(Rouge, IdentityAndDisjoint) {
  const auto same = rouge("x y z", "x y z");
  EXPECT_DOUBLE_EQ(same.rouge1_f, 1.0);
  EXPECT_DOUBLE_EQ(same.rouge2_f, 1.0);
  EXPECT_DOUBLE_EQ(same.rougeL_f, 1.0);
  const auto none = rouge("x y z", "p q");
  EXPECT_EQ(none.rouge1_f, 0.0);
  EXPECT_EQ(none.rouge2_f, 0.0);
  EXPECT_EQ(none.rougeL_f, 0.0);
}

TEST(Rouge, SingleTokenBigramConvention) {
  EXPECT_EQ(rouge("a", "a").rouge2_f, 1.0);
  EXPECT_EQ(rouge("a", "b").rouge2_f, 0.0);
  EXPECT_EQ(rouge("a b", "a").rouge2_f, 0.0);
}

TEST(Rouge, ClippedCounts) {
  // candidate "a a a" vs reference "a b": one clipped unigram match
  const auto r = rouge("a b", "a a a");
  const double p = 1.0 / 3, q = 1.0 / 2;
  EXPECT_NEAR(r.rouge1_f, 2 * p * q / (p + q), 1e-15);
}

TEST(Lcs, MatchesEnumeration) {
  const oracle::Tokens a{"a", "b", "a", "c", "b"}, b{"b", "a", "c", "a", "b", "c"};
  EXPECT_EQ(lcs_length(a, b), oracle::lcs_by_enumeration(a, b));
  EXPECT_EQ(lcs_length(a, b), 4u);
}

TEST(Spearman, FrozenExample) {
  const std::vector<double> x{1, 2, 3, 4, 5}, y{3, 1, 4, 2, 5};
  EXPECT_NEAR(spearman(x, y), 0.5, 1e-15);
}

TEST(Spearman, TiesUseAverageRanks) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
  const std::vector<double> x{1, 2, 2, 3}, y{1, 2, 2, 3};
  EXPECT_DOUBLE_EQ(spearman(x, y), 1.0);
}

TEST(Spearman, PerfectAndReversed) {
  const std::vector<double> x{1, 2, 3}, up{10, 20, 30}, down{3, 2, 1};
  EXPECT_DOUBLE_EQ(spearman(x, up), 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, down), -1.0);
}

TEST(Spearman, Errors) {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, c{4, 4, 4}, one{1};
  EXPECT_THROW(spearman(a, b), ValidationError);
  EXPECT_THROW(spearman(one, one), ValidationError);
  EXPECT_THROW(spearman(a, c), UndefinedCorrelation);
}
