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

#include "mind_cli/stages.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "mind/error.hpp"

namespace mind::cli {

namespace {

std::string join_lines(const std::vector<ordered_json>& records) {
  std::string out;
  for (const auto& r : records) out.append(dump_line(r)).push_back('\n');
  return out;
}

std::map<std::pair<std::string, std::size_t>, std::string> chunk_texts(const fs::path& chunks) {
  std::map<std::pair<std::string, std::size_t>, std::string> out;
  for (auto& c : read_chunks(chunks)) out.emplace(std::pair{c.doc_id, c.index}, std::move(c.text));
  return out;
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::exists(p)) throw IoError(std::string(what) + " not found: " + p.string());
}

}  // namespace

SourceArg parse_source_arg(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
    throw ConfigError("blend source '" + arg + "' must look like name:weight=path");
  }
  SourceArg s;
  std::string head = arg.substr(0, eq);
  const auto colon = head.find(':');
  if (colon != std::string::npos) {
    const std::string w = head.substr(colon + 1);
    std::size_t used = 0;
    try {
      s.weight = std::stod(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != w.size()) throw ConfigError("blend source '" + arg + "' has a bad weight");
    head.resize(colon);
  }
  if (head.empty()) throw ConfigError("blend source '" + arg + "' has no name");
  s.name = head;
  std::stringstream paths(arg.substr(eq + 1));
  for (std::string p; std::getline(paths, p, ',');) {
    if (!p.empty()) s.paths.emplace_back(p);
  }
  if (s.paths.empty()) throw ConfigError("blend source '" + arg + "' has no path");
  return s;
}

void PipelineConfig::validate() const {
  if (corpus.empty()) throw ConfigError("no corpus files given");
  for (const auto& p : corpus) {
    if (!fs::is_regular_file(p)) throw ConfigError("corpus file not found: " + p.string());
  }
  tokenizer.validate();
  generation.validate(tokenizer);
  if (filter.min_tokens == 0) throw ConfigError("min_tokens must be at least 1");
  if (quality_threshold < 1.0 || quality_threshold > 5.0) throw ConfigError("quality_threshold must lie in [1, 5]");
  if (!(composed_weight > 0)) throw ConfigError("composed_weight must be positive");
  for (const auto& s : sources) {
    if (!(s.weight > 0)) throw ConfigError("blend source '" + s.name + "' needs a positive weight");
    for (const auto& p : s.paths) {
      if (!fs::is_regular_file(p)) throw ConfigError("blend source file not found: " + p.string());
    }
  }
  if (templates && !fs::is_directory(*templates)) throw ConfigError("templates directory not found: " + templates->string());
}

PromptRegistry PipelineConfig::load_prompts() const {
  return templates ? PromptRegistry::load(*templates) : PromptRegistry::load_default();
}

std::vector<std::string> PipelineConfig::resolved_styles(const PromptRegistry& prompts) const {
  if (styles.empty()) return prompts.list_styles();
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& s : styles) {
    if (!prompts.contains(s)) throw ConfigError("unknown style '" + s + "'");
    if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

std::string PipelineConfig::resolved_judge_endpoint() const {
  if (!judge_endpoint.empty()) return judge_endpoint;
  return endpoint == "mock" ? "mock-judge" : endpoint;
}

ordered_json ChunkStats::to_json() const {
  return {{"documents", documents}, {"chunks", chunks}, {"skipped_lines", skipped_lines}};
}

ChunkStats chunk_stage(const std::vector<fs::path>& corpus, const TokenizerSpec& spec, const fs::path& out) {
  spec.validate();
  ChunkStats st;
  std::map<std::string, fs::path> ids;
  std::string buf;
  for (const auto& path : corpus) {
    CorpusReader reader(path);
    while (auto doc = reader.next()) {
      auto [it, fresh] = ids.emplace(doc->id, path);
      if (!fresh) {
        throw ValidationError("duplicate id '" + doc->id + "' in " + it->second.string() + " and " + path.string());
      }
      ++st.documents;
      for (const auto& c : chunk_document(*doc, spec)) {
        buf.append(dump_line(mind::to_json(c))).push_back('\n');
        ++st.chunks;
      }
    }
    st.skipped_lines += reader.skipped();
  }
  if (out.has_parent_path()) ensure_writable_dir(out.parent_path());
  write_file_atomic(out, buf);
  return st;
}

JobSummary generate_stage(const fs::path& chunks, const fs::path& job_dir, const PipelineConfig& cfg) {
  require_file(chunks, "chunk file");
  const PromptRegistry prompts = cfg.load_prompts();
  const auto styles = cfg.resolved_styles(prompts);
  auto client = make_client(cfg.endpoint, cfg.mock_latency);
  ConversationGenerator gen(prompts, cfg.tokenizer, cfg.generation, *client);

  std::ifstream in(chunks);
  if (!in) throw IoError("cannot open " + chunks.string());
  std::size_t lineno = 0;
  ChunkSource source = [&]() -> std::optional<Chunk> {
    for (std::string line; std::getline(in, line);) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) throw ValidationError(chunks.string() + ":" + std::to_string(lineno) + ": not JSON");
      return chunk_from_json(j);
    }
    return std::nullopt;
  };
  JobOptions opts;
  opts.retry_failed = cfg.retry_failed;
  opts.max_new_records = cfg.max_new_records;
  return run_generation_job(source, styles, gen, job_dir, opts);
}

std::vector<Conversation> load_conversations(const fs::path& input) {
  if (fs::is_directory(input)) {
    if (!fs::exists(input / GenerationJob::kManifestFile)) {
      throw IoError("not a job directory (no manifest): " + input.string());
    }
    return read_job_outputs(input);
  }
  require_file(input, "conversation file");
  return read_conversations(input);
}

ordered_json FilterStats::to_json() const { return {{"total", total}, {"kept", kept}, {"flagged", flagged}}; }

FilterStats filter_stage(const fs::path& input, const fs::path& out_dir, const TokenizerSpec& spec,
                         const FilterOptions& opts) {
  spec.validate();
  const auto convs = load_conversations(input);
  ensure_writable_dir(out_dir);
  FilterStats st;
  std::string decisions, kept;
  for (const auto& c : convs) {
    const auto d = heuristic_filter(c, spec, opts);
    ++st.total;
    if (!d.flags.empty()) ++st.flagged;
    decisions.append(dump_line(decision_record(c, d))).push_back('\n');
    if (d.keep) {
      ++st.kept;
      kept.append(dump_line(mind::to_json(c))).push_back('\n');
    }
  }
  write_file_atomic(out_dir / "decisions.jsonl", decisions);
  write_file_atomic(out_dir / "kept.jsonl", kept);
  return st;
}

ordered_json ScoreStats::to_json() const {
  return {{"scored", scored}, {"kept", kept}, {"parse_errors", parse_errors}};
}

ScoreStats score_stage(const fs::path& chunks, const fs::path& input, const fs::path& out_dir,
                       const PipelineConfig& cfg) {
  require_file(chunks, "chunk file");
  const auto convs = load_conversations(input);
  const auto contexts = chunk_texts(chunks);
  const PromptRegistry prompts = cfg.load_prompts();
  auto judge = make_client(cfg.resolved_judge_endpoint(), cfg.mock_latency);
  RetryPolicy retry;
  retry.max_retries = cfg.generation.max_retries;

  struct Outcome {
    std::optional<QualityScore> score;
    std::string error;
  };
  std::vector<Outcome> outcomes(convs.size());
  for (const auto& c : convs) {
    if (!contexts.count({c.doc_id, c.chunk_index})) {
      throw ValidationError("no chunk for conversation " + c.doc_id + "#" + std::to_string(c.chunk_index));
    }
  }

  // Results land by index, so output order does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < convs.size(); i = next++) {
      const auto& c = convs[i];
      try {
        outcomes[i].score = score_conversation(contexts.at({c.doc_id, c.chunk_index}), c, prompts, *judge,
                                               cfg.generation, retry);
      } catch (const ScoreParseError& e) {
        outcomes[i].error = e.what();
      } catch (...) {
        std::lock_guard lk(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        next = convs.size();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(cfg.generation.max_in_flight, convs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (fatal) std::rethrow_exception(fatal);

  ensure_writable_dir(out_dir);
  ScoreStats st;
  std::string scores, kept;
  for (std::size_t i = 0; i < convs.size(); ++i) {
    const auto& c = convs[i];
    ordered_json rec;
    bool keep = false;
    if (outcomes[i].score) {
      rec = score_record(c, *outcomes[i].score);
      keep = quality_gate(*outcomes[i].score, cfg.quality_threshold);
    } else {
      rec = {{"doc_id", c.doc_id}, {"chunk_index", c.chunk_index}, {"style", c.style}, {"error", outcomes[i].error}};
      ++st.parse_errors;
    }
    rec["decision"] = keep ? "keep" : "reject";
    ++st.scored;
    scores.append(dump_line(rec)).push_back('\n');
    if (keep) {
      ++st.kept;
      kept.append(dump_line(mind::to_json(c))).push_back('\n');
    }
  }
  write_file_atomic(out_dir / "scores.jsonl", scores);
  write_file_atomic(out_dir / "kept.jsonl", kept);
  return st;
}

fs::path mix_half_path(const fs::path& composed, std::string_view half) {
  fs::path p = composed;
  p.replace_filename(composed.stem().string() + "." + std::string(half) + ".jsonl");
  return p;
}

ComposeSummary compose_stage(const fs::path& chunks, const fs::path& input, const fs::path& out,
                             const fs::path& summary, const TokenizerSpec& spec, const ComposeOptions& opts) {
  spec.validate();
  const auto convs = load_conversations(input);
  std::vector<Chunk> raw;
  if (opts.mode == ComposeMode::kConcat || opts.mode == ComposeMode::kMix1to1) {
    require_file(chunks, "chunk file");
    raw = read_chunks(chunks);
  }
  const auto result = compose_dataset(raw, convs, spec, opts);
  if (out.has_parent_path()) ensure_writable_dir(out.parent_path());

  std::vector<ordered_json> all, raw_half, syn_half;
  for (const auto& d : result.documents) {
    auto j = mind::to_json(d);
    (d.source == "raw" ? raw_half : syn_half).push_back(j);
    all.push_back(std::move(j));
  }
  write_file_atomic(out, join_lines(all));
  if (opts.mode == ComposeMode::kMix1to1) {
    write_file_atomic(mix_half_path(out, "raw"), join_lines(raw_half));
    write_file_atomic(mix_half_path(out, "synthetic"), join_lines(syn_half));
  }
  if (summary.has_parent_path()) ensure_writable_dir(summary.parent_path());
  write_file_atomic(summary, result.summary.to_json().dump(2) + "\n");
  return result.summary;
}

ordered_json BlendStats::to_json() const {
  ordered_json j = mind::to_json(manifest);
  j["emitted_tokens"] = emitted_tokens;
  j["emitted_documents"] = emitted_documents;
  return j;
}

BlendStats blend_stage(const std::vector<SourceArg>& sources, std::uint64_t budget, std::uint64_t seed,
                       const TokenizerSpec& spec, const fs::path& out_dir, bool manifest_only) {
  spec.validate();
  if (sources.empty()) throw ConfigError("blend needs at least one --source");
  std::vector<DatasetSpec> specs;
  std::uint64_t one_pass = 0;
  for (const auto& s : sources) {
    for (const auto& p : s.paths) require_file(p, "blend source");
    DatasetSpec d{s.name, s.paths.front(), count_corpus_tokens(s.paths, spec), s.weight};
    if (d.total_tokens == 0) throw ValidationError("blend source '" + s.name + "' has no tokens");
    one_pass += d.total_tokens;
    specs.push_back(std::move(d));
  }
  BlendStats st;
  st.manifest = compute_blend(specs, budget == 0 ? one_pass : budget, seed);
  ensure_writable_dir(out_dir);
  write_file_atomic(out_dir / "manifest.json", mind::to_json(st.manifest).dump(2) + "\n");
  if (manifest_only) return st;

  std::map<std::string, std::unique_ptr<DocumentSource>> srcs;
  for (const auto& s : sources) srcs.emplace(s.name, std::make_unique<FileSource>(s.paths));
  BlendSampler sampler(st.manifest, std::move(srcs), spec);
  JsonlWriter out(out_dir / "blend.jsonl.tmp");
  while (auto d = sampler.next()) out.write(mind::to_json(*d));
  out.flush();
  fs::rename(out_dir / "blend.jsonl.tmp", out_dir / "blend.jsonl");
  st.emitted_tokens = sampler.emitted_tokens();
  st.emitted_documents = sampler.emitted_documents();
  return st;
}

std::vector<SourceArg> composed_sources(const fs::path& composed, const PipelineConfig& cfg) {
  std::vector<SourceArg> out;
  if (cfg.compose.mode == ComposeMode::kMix1to1) {
    // Equal weights: the same number of tokens from each half.
    out.push_back({"raw", cfg.composed_weight / 2, {mix_half_path(composed, "raw")}});
    out.push_back({"synthetic", cfg.composed_weight / 2, {mix_half_path(composed, "synthetic")}});
  } else {
    out.push_back({"composed", cfg.composed_weight, {composed}});
  }
  out.insert(out.end(), cfg.sources.begin(), cfg.sources.end());
  return out;
}

ordered_json stats_stage(const fs::path& input, const TokenizerSpec& spec) {
  spec.validate();
  if (fs::is_directory(input)) {
    const auto convs = load_conversations(input);
    std::vector<LengthSample> samples = length_samples(convs, spec);
    ordered_json j{{"kind", "conversations"}, {"records", convs.size()}};
    std::size_t failed = 0;
    for (const auto& c : convs) failed += c.ok() ? 0 : 1;
    j["failed"] = failed;
    j["by_style"] = ordered_json::array();
    if (!samples.empty()) {
      for (const auto& s : length_stats(samples, BucketBy::kStyle)) j["by_style"].push_back(to_json(s, BucketBy::kStyle));
    }
    return j;
  }
  require_file(input, "input file");
  std::string kind;
  std::size_t records = 0;
  std::uint64_t tokens = 0;
  std::map<std::string, std::pair<std::size_t, std::uint64_t>> by_source;
  for_each_line(input, [&](std::string_view line, std::size_t lineno) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ValidationError(input.string() + ":" + std::to_string(lineno) + ": not a JSON object");
    }
    std::string k = j.contains("style") ? "conversations" : j.contains("index") ? "chunks" : "documents";
    if (kind.empty()) kind = k;
    if (k != kind) throw ValidationError(input.string() + ":" + std::to_string(lineno) + ": mixed record kinds");
    ++records;
    const std::uint64_t n =
        j.contains("text") && j["text"].is_string() ? count_tokens(j["text"].get<std::string>(), spec) : 0;
    tokens += n;
    std::string group = k == "conversations" ? j.value("style", "") : j.value("source", "");
    auto& g = by_source[group];
    ++g.first;
    g.second += n;
  });
  ordered_json out{{"kind", kind.empty() ? "empty" : kind}, {"records", records}, {"tokens", tokens}};
  if (kind != "chunks") {
    ordered_json groups = ordered_json::array();
    for (const auto& [name, g] : by_source) {
      groups.push_back({{kind == "conversations" ? "style" : "source", name}, {"records", g.first}, {"tokens", g.second}});
    }
    out["groups"] = groups;
  }
  return out;
}

ordered_json run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  const fs::path& out = cfg.out_dir;
  ensure_writable_dir(out);

  const auto chunk_st = chunk_stage(cfg.corpus, cfg.tokenizer, out / "chunks.jsonl");
  generate_stage(out / "chunks.jsonl", out / "job", cfg);
  const std::size_t generated = read_job_outputs(out / "job").size();
  const auto filter_st = filter_stage(out / "job", out / "filter", cfg.tokenizer, cfg.filter);

  fs::path survivors = out / "filter" / "kept.jsonl";
  std::optional<std::size_t> kept_quality;
  if (cfg.with_judge) {
    kept_quality = score_stage(out / "chunks.jsonl", survivors, out / "score", cfg).kept;
    survivors = out / "score" / "kept.jsonl";
  }
  const auto composed = compose_stage(out / "chunks.jsonl", survivors, out / "composed.jsonl",
                                      out / "compose_summary.json", cfg.tokenizer, cfg.compose);

  std::uint64_t blend_tokens = 0;
  if (composed.documents > 0) {
    const auto blend = blend_stage(composed_sources(out / "composed.jsonl", cfg), cfg.budget, cfg.seed,
                                   cfg.tokenizer, out / "blend", cfg.manifest_only);
    blend_tokens = cfg.manifest_only ? blend.manifest.budget_tokens : blend.emitted_tokens;
  }

  ordered_json report;
  report["documents"] = chunk_st.documents;
  report["chunks"] = chunk_st.chunks;
  report["generated"] = generated;
  report["kept_heuristic"] = filter_st.kept;
  report["kept_quality"] = kept_quality ? ordered_json(*kept_quality) : ordered_json(nullptr);
  report["composed_docs"] = composed.documents;
  report["blend_tokens"] = blend_tokens;
  write_file_atomic(out / "report.json", report.dump(2) + "\n");
  return report;
}

}  // namespace mind::cli
