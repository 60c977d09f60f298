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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mind/jsonl.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

/// One raw corpus record.
struct Document {
  std::string id;
  std::string text;
  std::string source;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Document&, const Document&) = default;
};

/// A token window of a document: the unit sent to the generator.
struct Chunk {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;
  std::size_t token_count = 0;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

/// Splits a document into `spec.window`-token chunks. A trailing remainder
/// shorter than `spec.min_trailing` is merged into the previous chunk, so the
/// last chunk holds at most window + min_trailing - 1 tokens. Documents
/// shorter than the window yield one chunk; empty documents yield none.
std::vector<Chunk> chunk_document(const Document& doc, const TokenizerSpec& spec);

/// Streams documents from a JSON-lines corpus file in file order.
///
/// Lines that are not a JSON object with string `id` (nonempty) and `text`
/// are skipped and counted. A repeated id throws ValidationError naming
/// both line numbers.
class CorpusReader {
 public:
  explicit CorpusReader(const std::filesystem::path& path);

  std::optional<Document> next();

  std::size_t skipped() const noexcept { return skipped_lines_.size(); }
  const std::vector<std::size_t>& skipped_lines() const noexcept { return skipped_lines_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t lineno_ = 0;
  std::vector<std::size_t> skipped_lines_;
  std::unordered_map<std::string, std::size_t> seen_;
};

struct CorpusContents {
  std::vector<Document> documents;
  std::size_t skipped = 0;
};

CorpusContents read_corpus(const std::filesystem::path& path);

/// Parses one corpus record; nullopt when the line is malformed.
std::optional<Document> parse_document(std::string_view line);

ordered_json to_json(const Document& doc);
ordered_json to_json(const Chunk& chunk);
Chunk chunk_from_json(const json& j);

/// Reads a chunk file written by the `chunk` stage.
std::vector<Chunk> read_chunks(const std::filesystem::path& path);

}  // namespace mind
