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

#include "mind/corpus.hpp"

#include "mind/error.hpp"

namespace mind {

namespace fs = std::filesystem;

std::vector<Chunk> chunk_document(const Document& doc, const TokenizerSpec& spec) {
  const auto tokenizer = spec.tokenizer();
  const auto tokens = tokenizer->tokenize(doc.text);
  const std::size_t n = tokens.size();
  if (n == 0) return {};

  const std::size_t window = spec.window;
  std::size_t full = n / window;
  const std::size_t rem = n % window;

  // Boundaries as token offsets; the remainder either stands alone or is
  // folded into the last full window.
  std::vector<std::size_t> bounds;
  bounds.reserve(full + 2);
  for (std::size_t i = 0; i <= full; ++i) bounds.push_back(i * window);
  if (rem != 0) {
    if (full == 0 || rem >= spec.min_trailing) {
      bounds.push_back(n);
    } else {
      bounds.back() = n;
    }
  }

  std::vector<Chunk> chunks;
  chunks.reserve(bounds.size() - 1);
  const std::span<const TokenSpan> all(tokens);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const auto piece = all.subspan(bounds[i], bounds[i + 1] - bounds[i]);
    chunks.push_back(Chunk{doc.id, i, tokenizer->detokenize(doc.text, piece), piece.size()});
  }
  return chunks;
}

std::optional<Document> parse_document(std::string_view line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) return std::nullopt;
  auto id = j.find("id");
  auto text = j.find("text");
  if (id == j.end() || !id->is_string() || text == j.end() || !text->is_string()) return std::nullopt;

  Document doc;
  doc.id = id->get<std::string>();
  if (doc.id.empty()) return std::nullopt;
  doc.text = text->get<std::string>();

  if (auto src = j.find("source"); src != j.end() && !src->is_null()) {
    if (!src->is_string()) return std::nullopt;
    doc.source = src->get<std::string>();
  }
  if (auto meta = j.find("meta"); meta != j.end() && !meta->is_null()) {
    if (!meta->is_object()) return std::nullopt;
    for (const auto& [k, v] : meta->items()) {
      doc.meta[k] = v.is_string() ? v.get<std::string>() : dump_line(v);
    }
  }
  return doc;
}

CorpusReader::CorpusReader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot read corpus " + path.string());
}

std::optional<Document> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto doc = parse_document(line);
    if (!doc) {
      skipped_lines_.push_back(lineno_);
      continue;
    }
    auto [it, inserted] = seen_.emplace(doc->id, lineno_);
    if (!inserted) {
      throw ValidationError(path_.string() + ": duplicate id '" + doc->id + "' on lines " +
                            std::to_string(it->second) + " and " + std::to_string(lineno_));
    }
    return doc;
  }
  if (in_.bad()) throw IoError("read failed on " + path_.string());
  return std::nullopt;
}

CorpusContents read_corpus(const fs::path& path) {
  CorpusReader reader(path);
  CorpusContents out;
  while (auto doc = reader.next()) out.documents.push_back(std::move(*doc));
  out.skipped = reader.skipped();
  return out;
}

ordered_json to_json(const Document& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  if (!doc.source.empty()) j["source"] = doc.source;
  if (!doc.meta.empty()) {
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : doc.meta) meta[k] = v;
    j["meta"] = std::move(meta);
  }
  return j;
}

ordered_json to_json(const Chunk& chunk) {
  ordered_json j;
  j["doc_id"] = chunk.doc_id;
  j["index"] = chunk.index;
  j["text"] = chunk.text;
  j["token_count"] = chunk.token_count;
  return j;
}

Chunk chunk_from_json(const json& j) {
  try {
    return Chunk{j.at("doc_id").get<std::string>(), j.at("index").get<std::size_t>(), j.at("text").get<std::string>(),
                 j.at("token_count").get<std::size_t>()};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed chunk record: ") + e.what());
  }
}

std::vector<Chunk> read_chunks(const fs::path& path) {
  std::vector<Chunk> out;
  for_each_line(path, [&](std::string_view line, std::size_t lineno) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": invalid JSON");
    out.push_back(chunk_from_json(j));
  });
  return out;
}

}  // namespace mind
