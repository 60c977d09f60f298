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

#include "mind/tokenizer.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "mind/error.hpp"

namespace mind {

namespace {

bool is_unicode_space(char32_t cp) noexcept {
  switch (cp) {
    case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
    case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

class Registry {
 public:
  Registry() { entries_.emplace(std::string(WhitespaceTokenizer::kName), std::make_shared<WhitespaceTokenizer>()); }

  void add(std::shared_ptr<const Tokenizer> t) {
    std::lock_guard lock(mu_);
    entries_[std::string(t->name())] = std::move(t);
  }

  std::shared_ptr<const Tokenizer> find(std::string_view name) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(std::string(name));
    if (it == entries_.end()) throw ConfigError("unknown tokenizer '" + std::string(name) + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::lock_guard lock(mu_);
    std::vector<std::string> out;
    for (const auto& [k, _] : entries_) out.push_back(k);
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const Tokenizer>> entries_;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

std::size_t whitespace_length_at(std::string_view text, std::size_t pos) noexcept {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return is_unicode_space(b0) ? 1 : 0;

  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else {
    // 4-byte sequences hold no whitespace; stray continuation bytes are not whitespace.
    return 0;
  }
  if (pos + len > text.size()) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  return is_unicode_space(cp) ? len : 0;
}

std::vector<TokenSpan> WhitespaceTokenizer::tokenize(std::string_view text) const {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n) {
      const std::size_t w = whitespace_length_at(text, i);
      if (w == 0) break;
      i += w;
    }
    if (i >= n) break;
    const std::size_t begin = i;
    while (i < n && whitespace_length_at(text, i) == 0) ++i;
    out.push_back({begin, i});
  }
  return out;
}

std::size_t WhitespaceTokenizer::count(std::string_view text) const {
  std::size_t tokens = 0;
  bool in_token = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t w = whitespace_length_at(text, i);
    if (w != 0) {
      in_token = false;
      i += w;
    } else {
      if (!in_token) ++tokens;
      in_token = true;
      ++i;
    }
  }
  return tokens;
}

std::string WhitespaceTokenizer::detokenize(std::string_view text, std::span<const TokenSpan> tokens) const {
  std::string out;
  std::size_t bytes = tokens.empty() ? 0 : tokens.size() - 1;
  for (const auto& t : tokens) bytes += t.size();
  out.reserve(bytes);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out.append(text.substr(tokens[i].begin, tokens[i].size()));
  }
  return out;
}

void register_tokenizer(std::shared_ptr<const Tokenizer> tokenizer) {
  if (!tokenizer || tokenizer->name().empty()) throw ConfigError("tokenizer must have a nonempty name");
  registry().add(std::move(tokenizer));
}

std::shared_ptr<const Tokenizer> find_tokenizer(std::string_view name) { return registry().find(name); }

std::vector<std::string> registered_tokenizers() { return registry().names(); }

void TokenizerSpec::validate() const {
  find_tokenizer(name);
  if (window == 0) throw ConfigError("window must be positive");
  if (min_trailing == 0) throw ConfigError("min-trailing must be positive");
  if (min_trailing >= window) {
    throw ConfigError("min-trailing (" + std::to_string(min_trailing) + ") must be smaller than window (" +
                      std::to_string(window) + ")");
  }
}

std::size_t count_tokens(std::string_view text, const TokenizerSpec& spec) {
  return spec.tokenizer()->count(text);
}

std::vector<std::string> metric_tokens(std::string_view text) {
  static const WhitespaceTokenizer ws;
  std::vector<std::string> out;
  for (const auto& span : ws.tokenize(text)) {
    std::string tok(text.substr(span.begin, span.size()));
    std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace mind
