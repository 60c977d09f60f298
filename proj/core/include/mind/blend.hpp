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
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mind/corpus.hpp"
#include "mind/jsonl.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

struct DatasetSpec {
  std::string name;
  std::filesystem::path path;
  std::uint64_t total_tokens = 0;
  double weight = 1.0;
};

struct BlendAllocation {
  std::string name;
  std::uint64_t tokens_to_see = 0;
  double epochs = 0.0;
  double normalized_weight = 0.0;

  friend bool operator==(const BlendAllocation&, const BlendAllocation&) = default;
};

struct BlendManifest {
  std::uint64_t budget_tokens = 0;
  std::uint64_t seed = 0;
  std::vector<BlendAllocation> allocations;

  friend bool operator==(const BlendManifest&, const BlendManifest&) = default;
};

/// tokens_to_see / dataset_tokens rounded to three decimals. Throws
/// ValidationError when dataset_tokens is zero.
double epochs_for(std::uint64_t tokens_to_see, std::uint64_t dataset_tokens);

/// Splits `budget_tokens` in proportion to the weights. Shares are floored
/// and the leftover tokens go one each to the largest fractional parts
/// (earlier spec on ties), so allocations sum to the budget exactly.
/// Throws ValidationError on no specs, a zero budget, a nonpositive weight or
/// token count, or a repeated name.
BlendManifest compute_blend(const std::vector<DatasetSpec>& specs, std::uint64_t budget_tokens, std::uint64_t seed);

ordered_json to_json(const BlendManifest& m);
BlendManifest manifest_from_json(const json& j);

/// A dataset split into shards that can be replayed in any order.
class DocumentSource {
 public:
  virtual ~DocumentSource() = default;
  virtual std::size_t shard_count() const = 0;
  /// Positions the source at the start of shard `i`.
  virtual void open_shard(std::size_t i) = 0;
  /// Next document of the open shard, or nullopt at its end.
  virtual std::optional<Document> next() = 0;
};

class MemorySource : public DocumentSource {
 public:
  explicit MemorySource(std::vector<std::vector<Document>> shards);
  std::size_t shard_count() const override { return shards_.size(); }
  void open_shard(std::size_t i) override;
  std::optional<Document> next() override;

 private:
  std::vector<std::vector<Document>> shards_;
  std::size_t shard_ = 0;
  std::size_t pos_ = 0;
};

/// Each file is one shard in corpus JSON-lines format.
class FileSource : public DocumentSource {
 public:
  explicit FileSource(std::vector<std::filesystem::path> shards);
  std::size_t shard_count() const override { return shards_.size(); }
  void open_shard(std::size_t i) override;
  std::optional<Document> next() override;

 private:
  std::vector<std::filesystem::path> shards_;
  std::unique_ptr<CorpusReader> reader_;
};

/// Shard order for one pass over a source: identity for epoch 0, a
/// Fisher-Yates shuffle seeded from (seed, source name, epoch) afterwards.
std::vector<std::size_t> shard_order(std::size_t shards, std::uint64_t seed, const std::string& name,
                                     std::uint64_t epoch);

/// Deterministic weighted interleave of whole documents.
///
/// Each step emits from the unfinished source whose deficit
/// share * emitted_total - emitted_source is largest (earlier allocation on
/// ties). A source is finished once it has emitted at least its allocation;
/// the stream ends when all are. Sources restart with a new shard order when
/// exhausted. Emitted ids are "name:id#e<epoch>" and the source field is the
/// allocation name.
class BlendSampler {
 public:
  /// Throws ValidationError when an allocation has no source.
  BlendSampler(BlendManifest manifest, std::map<std::string, std::unique_ptr<DocumentSource>> sources,
               TokenizerSpec spec);

  std::optional<Document> next();

  std::uint64_t emitted_tokens() const noexcept { return total_; }
  std::uint64_t emitted_tokens(std::size_t allocation) const { return states_.at(allocation).emitted; }
  std::size_t emitted_documents() const noexcept { return documents_; }

 private:
  struct State {
    std::unique_ptr<DocumentSource> source;
    std::uint64_t emitted = 0;
    std::uint64_t epoch = 0;
    std::vector<std::size_t> order;
    std::size_t order_pos = 0;
    std::uint64_t epoch_tokens = 0;
    bool started = false;
  };

  std::optional<Document> pull(std::size_t i);

  BlendManifest manifest_;
  TokenizerSpec spec_;
  std::vector<State> states_;
  std::uint64_t total_ = 0;
  std::size_t documents_ = 0;
};

/// Runs a sampler to completion.
std::vector<Document> sample_blend(const BlendManifest& manifest,
                                   std::map<std::string, std::unique_ptr<DocumentSource>> sources,
                                   const TokenizerSpec& spec);

/// Sum of document token counts across the given corpus files.
std::uint64_t count_corpus_tokens(const std::vector<std::filesystem::path>& paths, const TokenizerSpec& spec);

}  // namespace mind
