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

#include "mind/compose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "mind/error.hpp"
#include "mind/prompts.hpp"

namespace mind {

namespace {

using ChunkKey = std::pair<std::string, std::size_t>;

std::string key_id(const ChunkKey& k) { return k.first + "#" + std::to_string(k.second); }

Document synthetic_doc(const Conversation& c, std::string id) {
  Document d;
  d.id = std::move(id);
  d.text = c.text;
  d.source = "synthetic";
  d.meta = {{"doc_id", c.doc_id}, {"chunk_index", std::to_string(c.chunk_index)}, {"style", c.style}};
  return d;
}

Document raw_doc(const Chunk& c, std::string id) {
  Document d;
  d.id = std::move(id);
  d.text = c.text;
  d.source = "raw";
  d.meta = {{"doc_id", c.doc_id}, {"chunk_index", std::to_string(c.index)}};
  return d;
}

}  // namespace

const Conversation& select_longest(std::span<const Conversation> group, const TokenizerSpec& spec) {
  if (group.empty()) throw ValidationError("select_longest: empty group");
  std::set<std::string_view> styles;
  const Conversation* best = nullptr;
  std::size_t best_tokens = 0;
  for (const auto& c : group) {
    if (c.doc_id != group.front().doc_id || c.chunk_index != group.front().chunk_index) {
      throw ValidationError("select_longest: mixed keys " + group.front().doc_id + "#" +
                            std::to_string(group.front().chunk_index) + " and " + c.doc_id + "#" +
                            std::to_string(c.chunk_index));
    }
    if (!styles.insert(c.style).second) throw ValidationError("select_longest: style '" + c.style + "' repeated");
    const std::size_t n = count_tokens(c.text, spec);
    if (!best || n > best_tokens || (n == best_tokens && style_before(c.style, best->style))) {
      best = &c;
      best_tokens = n;
    }
  }
  return *best;
}

std::string_view to_string(ComposeMode m) noexcept {
  switch (m) {
    case ComposeMode::kLongest: return "longest";
    case ComposeMode::kAll: return "all";
    case ComposeMode::kConcat: return "concat";
    case ComposeMode::kMix1to1: return "mix1to1";
  }
  return "longest";
}

ComposeMode parse_compose_mode(std::string_view name) {
  for (auto m : {ComposeMode::kLongest, ComposeMode::kAll, ComposeMode::kConcat, ComposeMode::kMix1to1}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown composition mode '" + std::string(name) + "' (expected longest, all, concat or mix1to1)");
}

ordered_json ComposeSummary::to_json() const {
  ordered_json j;
  j["mode"] = to_string(mode);
  j["documents"] = documents;
  j["keys"] = keys;
  if (mode == ComposeMode::kConcat) j["raw_only_keys"] = raw_only_keys;
  if (mode == ComposeMode::kMix1to1) {
    j["raw_documents"] = raw_documents;
    j["synthetic_documents"] = synthetic_documents;
  }
  j["raw_total"] = raw_total;
  j["synthetic_total"] = synthetic_total;
  return j;
}

ComposeResult compose_dataset(std::span<const Chunk> raw, std::span<const Conversation> convs,
                              const TokenizerSpec& spec, const ComposeOptions& opts) {
  const bool needs_raw = opts.mode == ComposeMode::kConcat || opts.mode == ComposeMode::kMix1to1;
  if (opts.mode == ComposeMode::kMix1to1 && opts.mix_synthetic != ComposeMode::kLongest &&
      opts.mix_synthetic != ComposeMode::kAll) {
    throw ConfigError("mix1to1 synthetic half must be longest or all");
  }

  std::map<ChunkKey, std::vector<Conversation>> groups;
  for (const auto& c : convs) {
    if (c.ok()) groups[{c.doc_id, c.chunk_index}].push_back(c);
  }
  for (auto& [_, g] : groups) {
    std::sort(g.begin(), g.end(), [](const Conversation& a, const Conversation& b) {
      return style_before(a.style, b.style);
    });
  }

  std::map<ChunkKey, const Chunk*> chunks;
  if (needs_raw) {
    for (const auto& c : raw) {
      if (!chunks.emplace(ChunkKey{c.doc_id, c.index}, &c).second) {
        throw ValidationError("duplicate chunk " + c.doc_id + "#" + std::to_string(c.index));
      }
    }
    for (const auto& [k, _] : groups) {
      if (!chunks.count(k)) throw ValidationError("no chunk for conversations of " + key_id(k));
    }
  }

  ComposeResult out;
  auto& s = out.summary;
  s.mode = opts.mode;
  auto emit_synthetic = [&](const std::vector<Conversation>& g, ComposeMode how) {
    if (how == ComposeMode::kLongest) {
      const auto& best = select_longest(g, spec);
      out.documents.push_back(synthetic_doc(best, key_id({best.doc_id, best.chunk_index})));
      s.synthetic_total += count_tokens(best.text, spec);
    } else {
      for (const auto& c : g) {
        out.documents.push_back(synthetic_doc(c, key_id({c.doc_id, c.chunk_index}) + "#" + c.style));
        s.synthetic_total += count_tokens(c.text, spec);
      }
    }
  };

  switch (opts.mode) {
    case ComposeMode::kLongest:
    case ComposeMode::kAll:
      for (const auto& [k, g] : groups) emit_synthetic(g, opts.mode);
      s.keys = groups.size();
      break;
    case ComposeMode::kConcat:
      for (const auto& [k, chunk] : chunks) {
        Document d = raw_doc(*chunk, key_id(k));
        d.source = "concat";
        s.raw_total += chunk->token_count;
        std::string styles;
        auto it = groups.find(k);
        if (it == groups.end()) {
          ++s.raw_only_keys;
        } else {
          for (const auto& c : it->second) {
            d.text.append(kConcatSeparator).append(c.text);
            styles += (styles.empty() ? "" : ",") + c.style;
            s.synthetic_total += count_tokens(c.text, spec);
          }
        }
        d.meta["styles"] = styles;
        out.documents.push_back(std::move(d));
      }
      s.keys = chunks.size();
      break;
    case ComposeMode::kMix1to1:
      for (const auto& [k, chunk] : chunks) {
        out.documents.push_back(raw_doc(*chunk, key_id(k) + "#raw"));
        s.raw_total += chunk->token_count;
        ++s.raw_documents;
        auto it = groups.find(k);
        if (it == groups.end()) continue;
        const std::size_t before = out.documents.size();
        emit_synthetic(it->second, opts.mix_synthetic);
        s.synthetic_documents += out.documents.size() - before;
      }
      s.keys = chunks.size();
      break;
  }
  s.documents = out.documents.size();
  return out;
}

}  // namespace mind
