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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mind/corpus.hpp"
#include "mind/generation.hpp"

namespace mind {

struct JobOptions {
  /// Regenerate keys whose earlier record failed.
  bool retry_failed = false;
  /// Stop after issuing this many new generations (the rest stay pending).
  std::optional<std::size_t> max_new_records;
};

struct JobSummary {
  std::size_t requested = 0;  // generations issued by this run
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // keys already completed by an earlier run

  ordered_json to_json() const;
};

using ChunkSource = std::function<std::optional<Chunk>()>;

/// Resumable fan-out of (chunk x style) generations into a job directory.
///
/// Layout: `<job_dir>/<style>.jsonl` holds one shard per style and
/// `<job_dir>/manifest.tsv` lists completed keys, one "doc_id\tchunk\tstyle"
/// per line. A record counts as completed only once its manifest line is
/// written, so a rerun after a crash drops orphaned shard lines and redoes
/// those keys. Failed records are completed too and are redone only with
/// JobOptions::retry_failed. On return every shard and the manifest are
/// rewritten in key order, so repeated runs over the same inputs produce
/// identical files.
class GenerationJob {
 public:
  static constexpr const char* kManifestFile = "manifest.tsv";

  GenerationJob(std::filesystem::path job_dir, std::vector<std::string> styles, const ConversationGenerator& generator,
                JobOptions options = {});

  JobSummary run(ChunkSource chunks);

 private:
  std::filesystem::path dir_;
  std::vector<std::string> styles_;
  const ConversationGenerator& gen_;
  JobOptions opts_;
};

JobSummary run_generation_job(ChunkSource chunks, const std::vector<std::string>& styles,
                              const ConversationGenerator& generator, const std::filesystem::path& job_dir,
                              JobOptions options = {});

/// Chunks every document of `corpus` under the generator's tokenizer spec.
JobSummary run_generation_job(CorpusReader& corpus, const std::vector<std::string>& styles,
                              const ConversationGenerator& generator, const std::filesystem::path& job_dir,
                              JobOptions options = {});

/// All records of every shard in a job directory, sorted by key.
std::vector<Conversation> read_job_outputs(const std::filesystem::path& job_dir);

/// Shard files of a job directory in canonical style order.
std::vector<std::filesystem::path> job_shards(const std::filesystem::path& job_dir);

ChunkSource chunk_source(std::vector<Chunk> chunks);

}  // namespace mind
