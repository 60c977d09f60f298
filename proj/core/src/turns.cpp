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

#include <algorithm>
#include <cctype>
#include <optional>

#include "mind/filters.hpp"

namespace mind {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string trim_block(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool valid_speaker(std::string_view name, std::size_t max_words) {
  if (name.empty() || name.size() > 40) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(first) || first >= 0x80)) return false;
  std::size_t words = 1;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (c == ' ') {
      if (i + 1 < name.size() && name[i + 1] != ' ') ++words;
      continue;
    }
    if (!(std::isalnum(c) || c == '.' || c == '\'' || c == '_' || c == '-' || c >= 0x80)) return false;
  }
  return words <= max_words && name.back() != ' ';
}

bool is_turn_header(std::string_view line) {
  if (line.size() < 6 || !line.starts_with("**") || !line.ends_with("**")) return false;
  std::string_view inner = trim(line.substr(2, line.size() - 4));
  if (inner.size() < 5) return false;
  std::string head(inner.substr(0, 4));
  std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
  if (head != "turn") return false;
  std::string_view num = trim(inner.substr(4));
  return !num.empty() && inner[4] == ' ' &&
         std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); });
}

struct Marker {
  std::string speaker;
  std::string_view rest;
};

// "**Speaker:** rest" or "**Speaker**: rest"
std::optional<Marker> bold_marker(std::string_view line) {
  if (!line.starts_with("**")) return std::nullopt;
  const auto close = line.find("**", 2);
  if (close == std::string_view::npos || close == 2) return std::nullopt;
  std::string_view inner = line.substr(2, close - 2);
  std::string_view rest = line.substr(close + 2);
  if (inner.ends_with(':')) {
    inner.remove_suffix(1);
  } else if (rest.starts_with(':')) {
    rest.remove_prefix(1);
  } else {
    return std::nullopt;
  }
  inner = trim(inner);
  if (!valid_speaker(inner, 6)) return std::nullopt;
  return Marker{std::string(inner), trim(rest)};
}

// "Speaker: rest"
std::optional<Marker> plain_marker(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 40) return std::nullopt;
  if (colon + 1 < line.size() && line[colon + 1] != ' ' && line[colon + 1] != '\t') return std::nullopt;
  std::string_view name = line.substr(0, colon);
  if (!valid_speaker(name, 4)) return std::nullopt;
  return Marker{std::string(name), trim(line.substr(colon + 1))};
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    out.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace

std::vector<DialogueTurn> parse_turns(std::string_view text) {
  const auto lines = split_lines(text);

  bool bold_mode = false;
  for (auto raw : lines) {
    if (bold_marker(trim(raw))) {
      bold_mode = true;
      break;
    }
  }

  std::vector<DialogueTurn> turns;
  bool open = false;
  for (auto raw : lines) {
    const std::string_view line = trim(raw);
    if (is_turn_header(line)) {
      open = false;
      continue;
    }
    auto marker = bold_mode ? bold_marker(line) : plain_marker(line);
    if (marker) {
      turns.push_back(DialogueTurn{std::move(marker->speaker), std::string(marker->rest), turns.size()});
      open = true;
      continue;
    }
    if (open) {
      auto& t = turns.back().text;
      t.push_back('\n');
      t.append(line);
    }
  }
  for (auto& t : turns) t.text = trim_block(t.text);
  return turns;
}

std::string serialize_turns(const std::vector<DialogueTurn>& turns) {
  std::string out;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (i) out.append("\n\n");
    out.append("**").append(turns[i].speaker).append(":** ").append(turns[i].text);
  }
  return out;
}

}  // namespace mind
