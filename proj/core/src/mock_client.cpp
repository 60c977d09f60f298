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

#include <array>
#include <thread>

#include "mind/completion_client.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

namespace {

struct MockVoice {
  std::string_view style;
  std::string_view keyword;  // found in the style instruction
  std::string_view asker;
  std::string_view answerer;
  bool turn_headers;  // "**Turn N**" blocks with plain "Name:" lines
  std::size_t words_per_turn;
  bool asks_questions;
};

constexpr std::array<MockVoice, 7> kVoices = {{
    {"two_professors", "two professors", "Professor 1", "Professor 2", false, 40, false},
    {"teacher_student", "a teacher and a student", "Student", "Teacher", false, 30, true},
    {"two_students", "two students", "Alex", "Ben", true, 25, true},
    {"interview", "interview-style", "Interviewer", "Subject Matter Expert", false, 30, true},
    {"problem_solving", "problem-solving", "User", "AI Assistant", false, 25, true},
    {"layman_knowall", "layman", "Layman", "Me", true, 12, true},
    {"debate", "debate-style", "Proponent", "Opponent", false, 20, true},
}};

constexpr MockVoice kDefaultVoice{"", "", "Speaker A", "Speaker B", false, 30, true};

const MockVoice& voice_for(std::string_view style) {
  for (const auto& v : kVoices) {
    if (v.style == style) return v;
  }
  return kDefaultVoice;
}

std::string speaker_line(const MockVoice& v, std::string_view who, const std::string& text) {
  std::string out;
  if (v.turn_headers) {
    out.append(who).append(": ");
  } else {
    out.append("**").append(who).append(":** ");
  }
  out.append(text);
  return out;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out.push_back(' ');
    out.append(words[i]);
  }
  return out;
}

std::string build_dialogue(const MockVoice& v, const std::vector<std::string>& words) {
  std::vector<std::string> blocks;
  std::size_t turn = 0;
  for (std::size_t at = 0; at < words.size(); at += v.words_per_turn, ++turn) {
    const std::size_t end = std::min(words.size(), at + v.words_per_turn);
    const std::string piece = join(words, at, end);
    std::string block;
    if (v.turn_headers) block = "**Turn " + std::to_string(turn + 1) + "**\n\n";
    if (v.asks_questions) {
      const std::string lead = join(words, at, std::min(end, at + 3));
      block += speaker_line(v, v.asker, "Can you walk me through the part that starts with \"" + lead + "\"?");
      block += "\n\n";
      block += speaker_line(v, v.answerer, "Sure. Step by step, it says: " + piece);
    } else {
      block += speaker_line(v, turn % 2 == 0 ? v.asker : v.answerer, piece);
    }
    blocks.push_back(std::move(block));
  }
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out.append("\n\n");
    out.append(blocks[i]);
  }
  return out;
}

}  // namespace

MockCompletionClient::MockCompletionClient(Mode mode, std::chrono::milliseconds latency)
    : mode_(mode), latency_(latency) {}

std::string MockCompletionClient::infer_style(std::string_view instruction) {
  for (const auto& v : kVoices) {
    if (instruction.find(v.keyword) != std::string_view::npos) return std::string(v.style);
  }
  return {};
}

ChatResponse MockCompletionClient::complete(const ChatRequest& req) {
  ++calls_;
  const std::size_t now = ++in_flight_;
  std::size_t peak = peak_.load();
  while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
  }
  struct Leave {
    std::atomic<std::size_t>& n;
    ~Leave() { --n; }
  } leave{in_flight_};
  if (latency_.count() > 0) std::this_thread::sleep_for(latency_);

  static const WhitespaceTokenizer ws;
  ChatResponse res;
  res.prompt_tokens = static_cast<std::int64_t>(ws.count(req.content));

  if (mode_ == Mode::kJudge) {
    const std::uint64_t h = fnv1a64(req.content);
    auto score = [&](int i) { return std::to_string(2 + ((h >> (8 * i)) & 0xff) % 4); };
    res.text = "Correctness: " + score(0) + "\nFaithfulness: " + score(1) + "\nInformation Preservation: " + score(2) +
               "\nNew Knowledge: " + score(3);
    res.completion_tokens = static_cast<std::int64_t>(ws.count(res.text));
    return res;
  }

  const auto split = req.content.rfind("\n\n");
  const std::string_view content(req.content);
  const std::string_view context = split == std::string::npos ? content : content.substr(0, split);
  const std::string_view instruction = split == std::string::npos ? std::string_view{} : content.substr(split + 2);
  const std::string style = infer_style(instruction);

  if (!style.empty() && context.find("mock:short=" + style) != std::string_view::npos) {
    res.text = "Sorry, I cannot turn this context into a conversation now.";
  } else {
    std::vector<std::string> words;
    for (const auto& span : ws.tokenize(context)) words.emplace_back(context.substr(span.begin, span.size()));
    res.text = build_dialogue(voice_for(style), words);
  }

  if (req.max_tokens > 0) {
    const auto spans = ws.tokenize(res.text);
    if (spans.size() > static_cast<std::size_t>(req.max_tokens)) {
      res.text.resize(spans[static_cast<std::size_t>(req.max_tokens) - 1].end);
      res.truncated = true;
    }
  }
  res.completion_tokens = static_cast<std::int64_t>(ws.count(res.text));
  return res;
}

}  // namespace mind
