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

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <signal.h>

#include "mind/job.hpp"
#include "mind/jsonl.hpp"
#include "mind_cli/app.hpp"
#include "test_env.hpp"

using namespace testenv;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), {"--templates", std::string(MIND_TEMPLATES_DIR)});
  std::ostringstream out, err;
  const int code = mind::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? " x" : "x") + std::to_string(i % 97);
  return s;
}

std::string doc_line(const std::string& id, const std::string& text) {
  return mind::json{{"id", id}, {"text", text}}.dump() + "\n";
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"bogus-subcommand"}).code, 1);
  EXPECT_EQ(cli({"run", "--format", "xml"}).code, 1);
  TempDir tmp;
  EXPECT_EQ(cli({"chunk", "--out-dir", tmp.path().string()}).code, 1);
  EXPECT_EQ(cli({"chunk", "--corpus", (tmp / "missing.jsonl").string(), "--out-dir", tmp.path().string()}).code, 1);
  EXPECT_EQ(cli({"compose", "--mode", "shuffle", "--out-dir", tmp.path().string()}).code, 1);
}

TEST(Cli, ValidationAndEndpointExitCodes) {
  TempDir tmp;
  write_text(tmp / "bad.jsonl", "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
  EXPECT_EQ(cli({"chunk", "--corpus", (tmp / "bad.jsonl").string(), "--out-dir", tmp.path().string()}).code, 2);
  write_text(tmp / "one.tsv", "1\n2\n");
  write_text(tmp / "two.tsv", "1\n");
  EXPECT_EQ(cli({"analyze", "spearman", (tmp / "one.tsv").string(), (tmp / "two.tsv").string()}).code, 2);

  write_text(tmp / "c.jsonl", doc_line("a", words(80)));
  const auto r = cli({"run", "--corpus", (tmp / "c.jsonl").string(), "--endpoint", "http://127.0.0.1:9/v1/chat/completions",
                      "--max-retries", "0", "--out-dir", (tmp / "o").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto report = mind::json::parse(slurp(tmp / "o" / "report.json"));
  EXPECT_EQ(report["generated"], 7);
  EXPECT_EQ(report["kept_heuristic"], 0);
  EXPECT_EQ(report["composed_docs"], 0);
}

TEST(Cli, ConfigFileKeys) {
  TempDir tmp;
  write_text(tmp / "c.jsonl", doc_line("a", words(120)));
  write_text(tmp / "cfg.toml", "min_tokens = 100000\nmode = \"all\"\n");
  const auto r = cli({"run", "--config", (tmp / "cfg.toml").string(), "--corpus", (tmp / "c.jsonl").string(),
                      "--out-dir", (tmp / "o").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(mind::json::parse(r.out)["kept_heuristic"], 0);
  write_text(tmp / "bad.toml", "min_tokns = 3\n");
  EXPECT_EQ(cli({"run", "--config", (tmp / "bad.toml").string()}).code, 1);
}

TEST(Cli, FilterThresholdIsInclusive) {
  TempDir tmp;
  std::string file;
  for (std::size_t n : {49u, 50u, 500u}) {
    mind::Conversation c;
    c.doc_id = "d" + std::to_string(n);
    c.style = "debate";
    c.text = words(n);
    file += mind::to_json(c).dump() + "\n";
  }
  write_text(tmp / "convs.jsonl", file);
  const auto r = cli({"filter", "--min-tokens", "50", "--input", (tmp / "convs.jsonl").string(), "--out",
                      (tmp / "f").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines_of(tmp / "f" / "kept.jsonl").size(), 2u);
  const auto decisions = lines_of(tmp / "f" / "decisions.jsonl");
  ASSERT_EQ(decisions.size(), 3u);
  EXPECT_EQ(mind::json::parse(decisions[0])["decision"], "reject");
}

TEST(Cli, BlendBudgetSplit) {
  TempDir tmp;
  std::string a, b;
  for (int i = 0; i < 30; ++i) a += doc_line("a" + std::to_string(i), words(10));
  for (int i = 0; i < 30; ++i) b += doc_line("b" + std::to_string(i), words(10));
  write_text(tmp / "a.jsonl", a);
  write_text(tmp / "b.jsonl", b);
  const auto r = cli({"blend", "--source", "math:2=" + (tmp / "a.jsonl").string(), "--source",
                      "web:1=" + (tmp / "b.jsonl").string(), "--budget", "300", "--seed", "5", "--out",
                      (tmp / "bl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = mind::json::parse(slurp(tmp / "bl" / "manifest.json"));
  EXPECT_EQ(m["allocations"][0]["tokens_to_see"], 200);
  EXPECT_EQ(m["allocations"][1]["tokens_to_see"], 100);
  EXPECT_EQ(lines_of(tmp / "bl" / "blend.jsonl").size(), 30u);
}

TEST(Cli, SpearmanFromColumns) {
  TempDir tmp;
  write_text(tmp / "xy.tsv", "1\t1\n2\t3\n3\t2\n4\t4\n");
  const auto r = cli({"analyze", "spearman", (tmp / "xy.tsv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(mind::json::parse(r.out)["rho"].get<double>(), 0.8);
}

TEST(Cli, ShortReplyIsDroppedByHeuristic) {
  TempDir tmp;
  write_text(tmp / "c.jsonl", doc_line("a", words(200) + " mock:short=debate"));
  const auto r = cli({"run", "--corpus", (tmp / "c.jsonl").string(), "--out-dir", (tmp / "o").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = mind::json::parse(r.out);
  EXPECT_EQ(report["generated"], 7);
  EXPECT_EQ(report["kept_heuristic"], 6);
}

TEST(Cli, RunMatchesChainedSubcommands) {
  TempDir tmp;
  const auto a = tmp / "run", b = tmp / "chain";
  auto base = reference_run_args(a);
  base.insert(base.begin(), "run");
  ASSERT_EQ(cli(base).code, 0);

  const std::vector<std::string> common = {"--corpus", data_path("e2e_corpus.jsonl").string(), "--mode", "all",
                                           "--seed", "20240601", "--out-dir", b.string()};
  for (const char* sub : {"chunk", "generate", "filter", "compose"}) {
    std::vector<std::string> args{sub};
    args.insert(args.end(), common.begin(), common.end());
    const auto r = cli(args);
    ASSERT_EQ(r.code, 0) << sub << ": " << r.err;
  }
  std::vector<std::string> args{"blend", "--composed", (b / "composed.jsonl").string()};
  args.insert(args.end(), common.begin(), common.end());
  ASSERT_EQ(cli(args).code, 0);

  for (const auto& f : golden_files(a)) {
    if (f == "report.json") continue;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Cli, ReferenceRunMatchesGoldens) {
  TempDir tmp;
  auto args = reference_run_args(tmp / "o");
  args.insert(args.begin(), "run");
  const auto r = cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto files = golden_files(tmp / "o");

  const auto golden = golden_dir() / "reference_run";
  if (std::getenv("MIND_UPDATE_GOLDENS")) {
    fs::remove_all(golden);
    for (const auto& f : files) {
      fs::create_directories((golden / f).parent_path());
      fs::copy_file(tmp / "o" / f, golden / f);
    }
    GTEST_SKIP() << "goldens rewritten";
  }
  for (const auto& f : files) {
    ASSERT_TRUE(fs::exists(golden / f)) << f;
    EXPECT_EQ(slurp(tmp / "o" / f), slurp(golden / f)) << f;
  }
}

TEST(Cli, KilledGenerationResumesToSameBytes) {
  TempDir tmp;
  const auto corpus = data_path("e2e_corpus.jsonl").string();
  ASSERT_EQ(cli({"chunk", "--corpus", corpus, "--out-dir", tmp.path().string()}).code, 0);
  const auto chunks = (tmp / "chunks.jsonl").string();

  ASSERT_EQ(cli({"generate", "--chunks", chunks, "--job-dir", (tmp / "clean").string()}).code, 0);

  const std::vector<std::string> slow = {"generate", "--chunks", chunks, "--job-dir", (tmp / "killed").string(),
                                         "--mock-latency-ms", "60", "--max-in-flight", "2"};
  const pid_t pid = spawn_cli(slow, tmp / "log1");
  EXPECT_TRUE(wait_for_lines(tmp / "killed" / "manifest.tsv", 3, 10000));
  ::kill(pid, SIGKILL);
  EXPECT_EQ(wait_child(pid), 128 + SIGKILL);
  const auto partial = lines_of(tmp / "killed" / "manifest.tsv").size();
  EXPECT_GT(partial, 0u);
  EXPECT_LT(partial, 28u);

  ASSERT_EQ(run_cli_process({"generate", "--chunks", chunks, "--job-dir", (tmp / "killed").string()}, tmp / "log2"), 0)
      << slurp(tmp / "log2");
  EXPECT_EQ(slurp(tmp / "killed" / "manifest.tsv"), slurp(tmp / "clean" / "manifest.tsv"));
  for (const auto& shard : mind::job_shards(tmp / "clean")) {
    EXPECT_EQ(slurp(tmp / "killed" / shard.filename()), slurp(shard)) << shard;
  }
}

TEST(Cli, StatsAndAnalyzeTsv) {
  TempDir tmp;
  auto args = reference_run_args(tmp / "o");
  args.insert(args.begin(), "run");
  ASSERT_EQ(cli(args).code, 0);
  const auto od = (tmp / "o").string();
  const auto s = cli({"stats", (tmp / "o" / "job").string()});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(mind::json::parse(s.out)["records"], 28);
  const auto sim = cli({"analyze", "similarity", "--out-dir", od, "--format", "tsv"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  std::istringstream lines(sim.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.substr(0, 6), "style\t");
  std::size_t rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, 7u);
  EXPECT_EQ(cli({"analyze", "curve", "--out-dir", od}).code, 0);
  EXPECT_EQ(cli({"analyze", "lengths", "--out-dir", od}).code, 0);
}
