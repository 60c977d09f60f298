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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mind/analysis.hpp"
#include "mind/blend.hpp"
#include "mind/compose.hpp"
#include "mind/filters.hpp"
#include "mind/generation.hpp"
#include "mind/job.hpp"
#include "mind/prompts.hpp"
#include "mind/tokenizer.hpp"

namespace mind::cli {

namespace fs = std::filesystem;

/// A blend source given as "name:weight=path[,path...]".
struct SourceArg {
  std::string name;
  double weight = 1.0;
  std::vector<fs::path> paths;
};

/// Throws ConfigError on a malformed argument.
SourceArg parse_source_arg(const std::string& arg);

/// Settings shared by every stage; field names match the CLI flags and
/// config keys.
struct PipelineConfig {
  std::vector<fs::path> corpus;
  TokenizerSpec tokenizer;
  std::vector<std::string> styles;  // empty: every registered style
  std::optional<fs::path> templates;

  GenerationConfig generation;
  std::string endpoint = "mock";
  std::string judge_endpoint;  // empty: generator endpoint, or mock-judge for mock
  std::chrono::milliseconds mock_latency{0};
  bool retry_failed = false;
  std::optional<std::size_t> max_new_records;

  FilterOptions filter;
  double quality_threshold = kDefaultQualityThreshold;
  bool with_judge = false;

  ComposeOptions compose;

  std::vector<SourceArg> sources;  // extra blend sources next to the composed data
  double composed_weight = 1.0;
  std::uint64_t budget = 0;  // 0: one pass over every source
  std::uint64_t seed = 0;
  bool manifest_only = false;

  fs::path out_dir = "mind_out";

  /// Throws ConfigError for missing corpus files and out-of-range settings.
  void validate() const;
  PromptRegistry load_prompts() const;
  std::vector<std::string> resolved_styles(const PromptRegistry& prompts) const;
  std::string resolved_judge_endpoint() const;
};

// Every stage reads and writes files only, so `run` and a chain of
// subcommands over the same paths write the same bytes.

struct ChunkStats {
  std::size_t documents = 0;
  std::size_t chunks = 0;
  std::size_t skipped_lines = 0;
  ordered_json to_json() const;
};
ChunkStats chunk_stage(const std::vector<fs::path>& corpus, const TokenizerSpec& spec, const fs::path& out);

JobSummary generate_stage(const fs::path& chunks, const fs::path& job_dir, const PipelineConfig& cfg);

/// Conversation records from a job directory or a single JSON-lines file.
std::vector<Conversation> load_conversations(const fs::path& input);

struct FilterStats {
  std::size_t total = 0;
  std::size_t kept = 0;
  std::size_t flagged = 0;
  ordered_json to_json() const;
};
/// Writes decisions.jsonl and kept.jsonl into `out_dir`.
FilterStats filter_stage(const fs::path& input, const fs::path& out_dir, const TokenizerSpec& spec,
                         const FilterOptions& opts);

struct ScoreStats {
  std::size_t scored = 0;
  std::size_t kept = 0;
  std::size_t parse_errors = 0;
  ordered_json to_json() const;
};
/// Writes scores.jsonl and kept.jsonl into `out_dir`.
ScoreStats score_stage(const fs::path& chunks, const fs::path& input, const fs::path& out_dir,
                       const PipelineConfig& cfg);

/// Writes the composed dataset to `out` and the summary to `summary`. In
/// mix1to1 mode the halves also go to <stem>.raw.jsonl and
/// <stem>.synthetic.jsonl next to `out`.
ComposeSummary compose_stage(const fs::path& chunks, const fs::path& input, const fs::path& out,
                             const fs::path& summary, const TokenizerSpec& spec, const ComposeOptions& opts);

fs::path mix_half_path(const fs::path& composed, std::string_view half);

struct BlendStats {
  BlendManifest manifest;
  std::uint64_t emitted_tokens = 0;
  std::size_t emitted_documents = 0;
  ordered_json to_json() const;
};
/// Measures the sources, writes manifest.json and, unless manifest_only,
/// the sampled blend.jsonl into `out_dir`.
BlendStats blend_stage(const std::vector<SourceArg>& sources, std::uint64_t budget, std::uint64_t seed,
                       const TokenizerSpec& spec, const fs::path& out_dir, bool manifest_only);

/// Blend sources `run` uses for a composed dataset plus the configured extras.
std::vector<SourceArg> composed_sources(const fs::path& composed, const PipelineConfig& cfg);

/// Record counts and token totals of a corpus, chunk or conversation file.
ordered_json stats_stage(const fs::path& input, const TokenizerSpec& spec);

/// chunk, generate, filter, (score), compose and blend under cfg.out_dir;
/// returns the run report, also written to report.json.
ordered_json run_pipeline(const PipelineConfig& cfg);

}  // namespace mind::cli
