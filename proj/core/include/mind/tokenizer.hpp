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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mind {

/// Byte range [begin, end) of one token inside the text it was cut from.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

/// A pluggable tokenizer. Token counts everywhere in the pipeline are
/// relative to the tokenizer named in the active TokenizerSpec.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual std::vector<TokenSpan> tokenize(std::string_view text) const = 0;
  virtual std::size_t count(std::string_view text) const { return tokenize(text).size(); }

  /// Renders `tokens` (spans into `text`, in order) as a string whose
  /// tokenization is exactly that token sequence.
  virtual std::string detokenize(std::string_view text, std::span<const TokenSpan> tokens) const = 0;
};

/// Splits on Unicode White_Space; rejoins with single ASCII spaces.
class WhitespaceTokenizer final : public Tokenizer {
 public:
  static constexpr std::string_view kName = "whitespace";

  std::string_view name() const noexcept override { return kName; }
  std::vector<TokenSpan> tokenize(std::string_view text) const override;
  std::size_t count(std::string_view text) const override;
  std::string detokenize(std::string_view text, std::span<const TokenSpan> tokens) const override;
};

/// Length in bytes of the Unicode whitespace code point starting at
/// `text[pos]`, or 0 if none starts there. Malformed UTF-8 is never whitespace.
std::size_t whitespace_length_at(std::string_view text, std::size_t pos) noexcept;

/// Registers a tokenizer under its name(). Replaces an existing entry.
void register_tokenizer(std::shared_ptr<const Tokenizer> tokenizer);

/// Throws ConfigError for unknown names.
std::shared_ptr<const Tokenizer> find_tokenizer(std::string_view name);

std::vector<std::string> registered_tokenizers();

/// Tokenizer selection plus the chunking window.
struct TokenizerSpec {
  std::string name{WhitespaceTokenizer::kName};
  std::size_t window = 500;
  std::size_t min_trailing = 50;

  /// Throws ConfigError on unknown tokenizer, zero sizes or min_trailing >= window.
  void validate() const;
  std::shared_ptr<const Tokenizer> tokenizer() const { return find_tokenizer(name); }
};

std::size_t count_tokens(std::string_view text, const TokenizerSpec& spec);

/// Metric tokenization: whitespace tokens, ASCII-lowercased, punctuation kept.
std::vector<std::string> metric_tokens(std::string_view text);

}  // namespace mind
