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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mind/corpus.hpp"
#include "mind/generation.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

/// Picks the record with the most tokens; ties go to the earlier style in
/// canonical order. Throws ValidationError on an empty group, mixed keys or
/// a repeated style.
const Conversation& select_longest(std::span<const Conversation> group, const TokenizerSpec& spec);

enum class ComposeMode { kLongest, kAll, kConcat, kMix1to1 };

std::string_view to_string(ComposeMode m) noexcept;
/// Throws ConfigError on an unknown name.
ComposeMode parse_compose_mode(std::string_view name);

/// Separator between parts of a concat document.
inline constexpr std::string_view kConcatSeparator = "\n\n";

struct ComposeOptions {
  ComposeMode mode = ComposeMode::kLongest;
  /// Synthetic half of mix1to1: longest conversation per chunk, or every
  /// surviving conversation.
  ComposeMode mix_synthetic = ComposeMode::kLongest;
};

struct ComposeSummary {
  ComposeMode mode = ComposeMode::kLongest;
  std::size_t documents = 0;
  std::size_t keys = 0;           // distinct (doc_id, chunk_index) in the output
  std::size_t raw_only_keys = 0;  // concat: chunks with no surviving conversation
  std::size_t raw_documents = 0;
  std::size_t synthetic_documents = 0;
  std::size_t raw_total = 0;       // tokens
  std::size_t synthetic_total = 0; // tokens

  ordered_json to_json() const;
};

struct ComposeResult {
  std::vector<Document> documents;
  ComposeSummary summary;
};

/// Builds a training dataset from surviving conversations.
///
/// Document ids are "doc#chunk" (longest, concat), "doc#chunk#style" (all)
/// and, for mix1to1, "doc#chunk#raw" next to the synthetic ids. The source
/// field is "synthetic", "concat" or "raw". Failed records are ignored.
/// concat and mix1to1 need `raw`; a conversation without a chunk is a
/// ValidationError there. Output is sorted by key, then style.
ComposeResult compose_dataset(std::span<const Chunk> raw, std::span<const Conversation> convs,
                              const TokenizerSpec& spec, const ComposeOptions& opts = {});

}  // namespace mind
