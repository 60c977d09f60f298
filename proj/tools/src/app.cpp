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

#include "mind_cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iomanip>
#include <sstream>

#include "mind/error.hpp"
#include "mind_cli/stages.hpp"

namespace mind::cli {

namespace {

// Config keys use the field spelling (min_tokens); flags use dashes.
class FieldNameConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    for (auto& item : items) std::replace(item.name.begin(), item.name.end(), '_', '-');
    return items;
  }
};

struct Paths {
  std::string out, chunks, input, job_dir, summary, composed;
  std::vector<std::string> files;
  std::vector<std::size_t> edges{0, 100, 200, 300, 400, 500, 550};
};

std::string or_default(const std::string& v, const fs::path& fallback) {
  return v.empty() ? fallback.string() : v;
}

std::vector<double> read_column(const fs::path& path, std::size_t column, std::size_t width) {
  std::vector<double> out;
  for_each_line(path, [&](std::string_view line, std::size_t lineno) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> cells;
    for (std::string c; in >> c;) cells.push_back(c);
    if (cells.size() != width) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(width) +
                            " column(s)");
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(cells[column], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cells[column].size() || used == 0) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": '" + cells[column] + "' is not a number");
    }
    out.push_back(v);
  });
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << std::fixed << v;
  return s.str();
}

void print_table(std::ostream& out, const ordered_json& rows, bool tsv) {
  if (!tsv) {
    out << rows.dump(2) << "\n";
    return;
  }
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [k, _] : rows.front().items()) {
    out << (first ? "" : "\t") << k;
    first = false;
  }
  out << "\n";
  for (const auto& r : rows) {
    first = true;
    for (const auto& [k, v] : r.items()) {
      out << (first ? "" : "\t");
      if (v.is_number_float()) {
        out << fmt(v.get<double>());
      } else if (v.is_string()) {
        out << v.get<std::string>();
      } else {
        out << v.dump();
      }
      first = false;
    }
    out << "\n";
  }
}

std::vector<Conversation> ok_only(std::vector<Conversation> convs) {
  std::erase_if(convs, [](const Conversation& c) { return !c.ok(); });
  return convs;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic dialogue pretraining data pipeline", "mind"};
  app.set_config("--config", "", "Key-value config file (option names as keys)");
  app.config_formatter(std::make_shared<FieldNameConfig>());
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  PipelineConfig cfg;
  std::vector<std::string> corpus, sources;
  std::string templates, mode = "longest", mix_synthetic = "longest", format = "json", out_dir = "mind_out";
  std::int64_t latency_ms = 0;
  std::size_t max_new = 0;

  app.add_option("--corpus", corpus, "Corpus JSON-lines files");
  app.add_option("--tokenizer", cfg.tokenizer.name, "Tokenizer name");
  app.add_option("--window", cfg.tokenizer.window, "Chunk size in tokens");
  app.add_option("--min-trailing", cfg.tokenizer.min_trailing, "Shorter trailing remainders merge into the last chunk");
  app.add_option("--styles", cfg.styles, "Styles to generate (default: all)")->delimiter(',');
  app.add_option("--templates", templates, "Prompt templates directory");
  app.add_option("--temperature", cfg.generation.temperature);
  app.add_option("--top-p", cfg.generation.top_p);
  app.add_option("--total-token-limit", cfg.generation.total_token_limit, "Prompt plus output token limit");
  app.add_option("--model-name", cfg.generation.model_name);
  app.add_option("--max-retries", cfg.generation.max_retries);
  app.add_option("--max-in-flight", cfg.generation.max_in_flight, "Concurrent endpoint requests");
  app.add_option("--endpoint", cfg.endpoint, "Chat completions URL, or mock");
  app.add_option("--judge-endpoint", cfg.judge_endpoint, "Judge URL (default: generator, mock-judge for mock)");
  app.add_option("--mock-latency-ms", latency_ms)->check(CLI::NonNegativeNumber);
  app.add_flag("--retry-failed", cfg.retry_failed, "Regenerate records that failed earlier");
  app.add_option("--max-new-records", max_new, "Stop a job after this many new generations (0: no limit)");
  app.add_option("--min-tokens", cfg.filter.min_tokens, "Heuristic filter threshold");
  app.add_option("--quality-threshold", cfg.quality_threshold, "Keep when the mean judge score reaches this");
  app.add_flag("--strict", cfg.filter.strict, "Reject zero-turn and truncated dialogues");
  app.add_flag("--with-judge", cfg.with_judge, "Run the quality gate in `run`");
  app.add_option("--mode", mode, "Composition: longest, all, concat or mix1to1");
  app.add_option("--mix-synthetic", mix_synthetic, "Synthetic half of mix1to1: longest or all");
  app.add_option("--source", sources, "Blend source name:weight=path[,path...]");
  app.add_option("--composed-weight", cfg.composed_weight, "Blend weight of the composed data in `run`");
  app.add_option("--budget", cfg.budget, "Blend budget in tokens (0: one pass over every source)");
  app.add_option("--seed", cfg.seed);
  app.add_flag("--manifest-only", cfg.manifest_only, "Write the blend manifest without sampling");
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "tsv"}));

  Paths p;
  auto* chunk = app.add_subcommand("chunk", "Split corpus documents into token windows");
  chunk->add_option("--out", p.out, "Chunk file (default <out-dir>/chunks.jsonl)");

  auto* generate = app.add_subcommand("generate", "Generate dialogues for every chunk and style");
  generate->add_option("--chunks", p.chunks);
  generate->add_option("--job-dir", p.job_dir);

  auto* filter = app.add_subcommand("filter", "Apply the token-count filter");
  filter->add_option("--input", p.input, "Job directory or conversation file");
  filter->add_option("--out", p.out, "Output directory");

  auto* score = app.add_subcommand("score", "Score dialogues with the judge and apply the quality gate");
  score->add_option("--chunks", p.chunks);
  score->add_option("--input", p.input);
  score->add_option("--out", p.out);

  auto* compose = app.add_subcommand("compose", "Build a training dataset from surviving dialogues");
  compose->add_option("--chunks", p.chunks);
  compose->add_option("--input", p.input);
  compose->add_option("--out", p.out);
  compose->add_option("--summary", p.summary);

  auto* blend = app.add_subcommand("blend", "Allocate a token budget across sources and sample the blend");
  blend->add_option("--composed", p.composed, "Composed dataset to include as in `run`");
  blend->add_option("--out", p.out);

  auto* analyze = app.add_subcommand("analyze", "Similarity, length and correlation reports");
  analyze->require_subcommand(1);
  auto* similarity = analyze->add_subcommand("similarity", "BLEU and ROUGE of dialogues against their chunk");
  auto* lengths = analyze->add_subcommand("lengths", "Dialogue length per style");
  auto* curve = analyze->add_subcommand("curve", "Dialogue length per input-length bucket");
  auto* spearman_cmd = analyze->add_subcommand("spearman", "Rank correlation of two columns");
  for (auto* sub : {similarity, lengths, curve}) {
    sub->add_option("--chunks", p.chunks);
    sub->add_option("--input", p.input);
  }
  curve->add_option("--edges", p.edges, "Bucket edges")->delimiter(',');
  spearman_cmd->add_option("files", p.files, "One two-column file, or two one-column files")->required()->expected(1, 2);

  auto* stats = app.add_subcommand("stats", "Record counts and token totals");
  stats->add_option("input", p.input)->required();

  auto* run = app.add_subcommand("run", "Run every stage under --out-dir");

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  try {
    for (const auto& c : corpus) cfg.corpus.emplace_back(c);
    for (const auto& s : sources) cfg.sources.push_back(parse_source_arg(s));
    if (!templates.empty()) cfg.templates = templates;
    cfg.mock_latency = std::chrono::milliseconds(latency_ms);
    if (max_new > 0) cfg.max_new_records = max_new;
    cfg.compose.mode = parse_compose_mode(mode);
    cfg.compose.mix_synthetic = parse_compose_mode(mix_synthetic);
    cfg.out_dir = out_dir;
    const fs::path od = cfg.out_dir;
    const bool tsv = format == "tsv";
    const std::string chunks_file = or_default(p.chunks, od / "chunks.jsonl");
    const std::string kept_file = or_default(p.input, od / "filter" / "kept.jsonl");

    if (chunk->parsed()) {
      if (cfg.corpus.empty()) throw ConfigError("chunk needs --corpus");
      out << chunk_stage(cfg.corpus, cfg.tokenizer, or_default(p.out, od / "chunks.jsonl")).to_json().dump(2) << "\n";
    } else if (generate->parsed()) {
      cfg.tokenizer.validate();
      cfg.generation.validate(cfg.tokenizer);
      out << generate_stage(chunks_file, or_default(p.job_dir, od / "job"), cfg).to_json().dump(2) << "\n";
    } else if (filter->parsed()) {
      if (cfg.filter.min_tokens == 0) throw ConfigError("min_tokens must be at least 1");
      out << filter_stage(or_default(p.input, od / "job"), or_default(p.out, od / "filter"), cfg.tokenizer, cfg.filter)
                 .to_json()
                 .dump(2)
          << "\n";
    } else if (score->parsed()) {
      out << score_stage(chunks_file, kept_file, or_default(p.out, od / "score"), cfg).to_json().dump(2) << "\n";
    } else if (compose->parsed()) {
      out << compose_stage(chunks_file, kept_file, or_default(p.out, od / "composed.jsonl"),
                           or_default(p.summary, od / "compose_summary.json"), cfg.tokenizer, cfg.compose)
                 .to_json()
                 .dump(2)
          << "\n";
    } else if (blend->parsed()) {
      const auto srcs = p.composed.empty() ? cfg.sources : composed_sources(p.composed, cfg);
      out << blend_stage(srcs, cfg.budget, cfg.seed, cfg.tokenizer, or_default(p.out, od / "blend"),
                         cfg.manifest_only)
                 .to_json()
                 .dump(2)
          << "\n";
    } else if (analyze->parsed()) {
      ordered_json rows = ordered_json::array();
      if (similarity->parsed()) {
        const auto convs = ok_only(load_conversations(kept_file));
        const auto chunks = read_chunks(chunks_file);
        for (const auto& r : style_similarity_report(pair_with_chunks(chunks, convs))) rows.push_back(to_json(r));
      } else if (lengths->parsed()) {
        const auto convs = load_conversations(kept_file);
        const auto samples = length_samples(convs, cfg.tokenizer);
        for (const auto& s : length_stats(samples, BucketBy::kStyle)) rows.push_back(to_json(s, BucketBy::kStyle));
      } else if (curve->parsed()) {
        const auto convs = load_conversations(kept_file);
        const auto chunks = read_chunks(chunks_file);
        const auto samples = length_samples(convs, cfg.tokenizer, chunks);
        for (const auto& s : length_stats(samples, BucketBy::kInputLength, p.edges)) {
          rows.push_back(to_json(s, BucketBy::kInputLength));
        }
      } else {
        std::vector<double> xs, ys;
        if (p.files.size() == 1) {
          xs = read_column(p.files[0], 0, 2);
          ys = read_column(p.files[0], 1, 2);
        } else {
          xs = read_column(p.files[0], 0, 1);
          ys = read_column(p.files[1], 0, 1);
        }
        const double rho = spearman(xs, ys);
        if (tsv) {
          out << "n\trho\n" << xs.size() << "\t" << fmt(rho) << "\n";
        } else {
          out << ordered_json{{"n", xs.size()}, {"rho", rho}}.dump(2) << "\n";
        }
        return 0;
      }
      print_table(out, rows, tsv);
    } else if (stats->parsed()) {
      out << stats_stage(p.input, cfg.tokenizer).dump(2) << "\n";
    } else if (run->parsed()) {
      out << run_pipeline(cfg).dump(2) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(exit_code_for(e));
  }
}

}  // namespace mind::cli
