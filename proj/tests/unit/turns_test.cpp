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

#include "mind/filters.hpp"
#include "mind/prompts.hpp"
#include "test_env.hpp"

using namespace mind;

TEST(ParseTurns, BoldColonInside) {
  const auto t = parse_turns("**Teacher:** What is 2+2?\n\n**Student:** 4.\nI think.");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].speaker, "Teacher");
  EXPECT_EQ(t[0].text, "What is 2+2?");
  EXPECT_EQ(t[1].text, "4.\nI think.");
  EXPECT_EQ(t[1].ordinal, 1u);
}

TEST(ParseTurns, BoldColonOutsideAndProseColons) {
  const auto t = parse_turns("**jgens**: first\nNote: still jgens\n**Cyosis**: second");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].text, "first\nNote: still jgens");
}

TEST(ParseTurns, PlainMarkersAndTurnHeaders) {
  const auto t = parse_turns("Intro text is dropped.\n\n**Turn 1**\n\nAlex: hi\n\nBen: hey\n\n**Turn 2**\n\nAlex: bye");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].speaker, "Alex");
  EXPECT_EQ(t[2].text, "bye");
}

TEST(ParseTurns, NoMarkersMeansNoTurns) {
  EXPECT_TRUE(parse_turns("Just a paragraph of prose, with a ratio 3:2 in it.").empty());
  EXPECT_TRUE(parse_turns("").empty());
  EXPECT_TRUE(parse_turns("http://example.org is a link").empty());
}

TEST(ParseTurns, SerializeRoundTrip) {
  std::vector<DialogueTurn> turns{{"Professor 1", "a\nb", 0}, {"Professor 2", "c", 1}};
  EXPECT_EQ(parse_turns(serialize_turns(turns)), turns);
}

TEST(ParseTurns, ExampleDialoguesAllParse) {
  for (auto style : kCanonicalStyles) {
    const auto text = testenv::slurp(testenv::data_path("example_dialogues/" + std::string(style) + ".md"));
    const auto turns = parse_turns(text);
    EXPECT_GE(turns.size(), 4u) << style;
    for (const auto& t : turns) EXPECT_FALSE(t.speaker.empty()) << style;
  }
}

TEST(ParseTurns, TwoStudentsMatchesHandCount) {
  const auto text = testenv::slurp(testenv::data_path("example_dialogues/two_students.md"));
  EXPECT_EQ(parse_turns(text).size(), 24u);
}

TEST(ParseTurns, TypoMarkerContinuesPreviousTurn) {
  const auto text = testenv::slurp(testenv::data_path("example_dialogues/debate.md"));
  const auto turns = parse_turns(text);
  for (const auto& t : turns) EXPECT_NE(t.speaker, "jgens**L");
  bool found = false;
  for (const auto& t : turns) found |= t.text.find("**jgens**L") != std::string::npos;
  EXPECT_TRUE(found);
}
