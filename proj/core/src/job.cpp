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

#include "mind/job.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

namespace mind {

namespace fs = std::filesystem;

namespace {

struct FileLines {
  std::vector<std::string> lines;
  bool partial_tail = false;
};

// Lines terminated by '\n'; an unterminated tail is reported, not returned.
FileLines read_complete_lines(const fs::path& path) {
  FileLines out;
  if (!fs::exists(path)) return out;
  const std::string content = read_file(path);
  std::size_t start = 0;
  while (start < content.size()) {
    const auto nl = content.find('\n', start);
    if (nl == std::string::npos) {
      out.partial_tail = true;
      break;
    }
    if (nl > start) out.lines.emplace_back(content, start, nl - start);
    start = nl + 1;
  }
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

struct KeyLess {
  bool operator()(const ConversationKey& a, const ConversationKey& b) const noexcept { return key_before(a, b); }
};

using KeySet = std::set<ConversationKey, KeyLess>;

fs::path shard_path(const fs::path& dir, std::string_view style) { return dir / (std::string(style) + ".jsonl"); }

void write_manifest(const fs::path& path, const KeySet& keys) {
  std::string content;
  for (const auto& k : keys) {
    content += k.to_manifest_line();
    content += '\n';
  }
  write_file_atomic(path, content);
}

// Brings shards and manifest into agreement and returns the completed keys.
KeySet reconcile(const fs::path& dir, bool retry_failed) {
  const fs::path manifest = dir / GenerationJob::kManifestFile;
  const FileLines mlines = read_complete_lines(manifest);
  KeySet listed;
  for (const auto& l : mlines.lines) listed.insert(ConversationKey::from_manifest_line(l));

  KeySet done;
  for (const auto& shard : job_shards(dir)) {
    const std::string style = shard.stem().string();
    FileLines slines = read_complete_lines(shard);
    bool dirty = slines.partial_tail;
    std::vector<std::string> kept;
    for (auto& line : slines.lines) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        dirty = true;
        continue;
      }
      Conversation c;
      try {
        c = conversation_from_json(j);
      } catch (const ValidationError&) {
        dirty = true;
        continue;
      }
      const auto key = c.key();
      if (c.style != style || !listed.contains(key) || done.contains(key) || (retry_failed && !c.ok())) {
        dirty = true;
        continue;
      }
      done.insert(key);
      kept.push_back(std::move(line));
    }
    if (dirty) write_file_atomic(shard, join_lines(kept));
  }

  if (mlines.partial_tail || listed.size() != done.size()) write_manifest(manifest, done);
  return done;
}

void sort_shard(const fs::path& shard) {
  auto convs = read_conversations(shard);
  std::stable_sort(convs.begin(), convs.end(), [](const auto& a, const auto& b) { return key_before(a.key(), b.key()); });
  write_conversations(shard, convs);
}

}  // namespace

ordered_json JobSummary::to_json() const {
  return ordered_json{{"requested", requested}, {"ok", ok}, {"failed", failed}, {"skipped", skipped}};
}

GenerationJob::GenerationJob(fs::path job_dir, std::vector<std::string> styles, const ConversationGenerator& generator,
                             JobOptions options)
    : dir_(std::move(job_dir)), styles_(std::move(styles)), gen_(generator), opts_(options) {
  if (styles_.empty()) throw ConfigError("no styles selected");
  std::set<std::string> unique;
  for (const auto& s : styles_) {
    gen_.prompts().instruction(s);
    if (!unique.insert(s).second) throw ConfigError("style '" + s + "' selected twice");
  }
}

JobSummary GenerationJob::run(ChunkSource chunks) {
  ensure_writable_dir(dir_);
  const KeySet completed = reconcile(dir_, opts_.retry_failed);

  JobSummary summary;
  std::mutex src_mu;
  std::shared_ptr<const Chunk> current;
  std::size_t style_idx = styles_.size();
  std::set<std::pair<std::string, std::size_t>> seen_chunks;
  std::size_t issued = 0;

  std::mutex out_mu;
  std::map<std::string, std::unique_ptr<JsonlWriter>> shards;
  JsonlWriter manifest(dir_ / kManifestFile, JsonlWriter::Mode::kAppend, /*durable=*/true);

  std::atomic<bool> stop{false};
  std::exception_ptr first_error;

  auto next_task = [&]() -> std::optional<std::pair<std::shared_ptr<const Chunk>, std::string>> {
    std::lock_guard lock(src_mu);
    for (;;) {
      if (stop.load()) return std::nullopt;
      if (opts_.max_new_records && issued >= *opts_.max_new_records) return std::nullopt;
      if (!current || style_idx == styles_.size()) {
        auto c = chunks();
        if (!c) return std::nullopt;
        if (!seen_chunks.emplace(c->doc_id, c->index).second) {
          throw ValidationError("chunk (" + c->doc_id + ", " + std::to_string(c->index) + ") appears twice in the input");
        }
        current = std::make_shared<const Chunk>(std::move(*c));
        style_idx = 0;
      }
      const std::string& style = styles_[style_idx++];
      if (completed.contains(ConversationKey{current->doc_id, current->index, style})) {
        ++summary.skipped;
        continue;
      }
      ++issued;
      return std::make_pair(current, style);
    }
  };

  auto record = [&](const Conversation& conv) {
    const std::string line = dump_line(to_json(conv));
    const std::string key_line = conv.key().to_manifest_line();
    std::lock_guard lock(out_mu);
    auto& w = shards[conv.style];
    if (!w) w = std::make_unique<JsonlWriter>(shard_path(dir_, conv.style), JsonlWriter::Mode::kAppend, true);
    // Shard line first: a crash in between leaves an orphan that reconcile drops.
    w->write_raw_line(line);
    manifest.write_raw_line(key_line);
    ++summary.requested;
    if (conv.ok()) {
      ++summary.ok;
    } else {
      ++summary.failed;
    }
  };

  auto worker = [&]() {
    try {
      while (auto task = next_task()) {
        record(gen_.generate(*task->first, task->second));
      }
    } catch (...) {
      std::lock_guard lock(out_mu);
      if (!first_error) first_error = std::current_exception();
      stop.store(true);
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, gen_.config().max_in_flight);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  shards.clear();
  manifest.flush();
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& shard : job_shards(dir_)) sort_shard(shard);
  KeySet all;
  for (const auto& line : read_complete_lines(dir_ / kManifestFile).lines) {
    all.insert(ConversationKey::from_manifest_line(line));
  }
  write_manifest(dir_ / kManifestFile, all);
  return summary;
}

JobSummary run_generation_job(ChunkSource chunks, const std::vector<std::string>& styles,
                              const ConversationGenerator& generator, const fs::path& job_dir, JobOptions options) {
  return GenerationJob(job_dir, styles, generator, options).run(std::move(chunks));
}

JobSummary run_generation_job(CorpusReader& corpus, const std::vector<std::string>& styles,
                              const ConversationGenerator& generator, const fs::path& job_dir, JobOptions options) {
  std::vector<Chunk> pending;
  std::size_t at = 0;
  const TokenizerSpec spec = generator.tokenizer_spec();
  ChunkSource source = [&, pending, at]() mutable -> std::optional<Chunk> {
    while (at == pending.size()) {
      auto doc = corpus.next();
      if (!doc) return std::nullopt;
      pending = chunk_document(*doc, spec);
      at = 0;
    }
    return std::move(pending[at++]);
  };
  return run_generation_job(std::move(source), styles, generator, job_dir, options);
}

std::vector<Conversation> read_job_outputs(const fs::path& job_dir) {
  std::vector<Conversation> all;
  for (const auto& shard : job_shards(job_dir)) {
    auto part = read_conversations(shard);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return key_before(a.key(), b.key()); });
  return all;
}

std::vector<fs::path> job_shards(const fs::path& job_dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(job_dir)) return out;
  for (const auto& e : fs::directory_iterator(job_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return style_before(a.stem().string(), b.stem().string()); });
  return out;
}

ChunkSource chunk_source(std::vector<Chunk> chunks) {
  return [chunks = std::move(chunks), at = std::size_t{0}]() mutable -> std::optional<Chunk> {
    if (at == chunks.size()) return std::nullopt;
    return chunks[at++];
  };
}

}  // namespace mind
