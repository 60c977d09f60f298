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

#include <benchmark/benchmark.h>

#include "mind/blend.hpp"

namespace {

std::map<std::string, std::unique_ptr<mind::DocumentSource>> sources() {
  auto make = [](const std::string& prefix, std::size_t tokens) {
    std::string text;
    for (std::size_t i = 0; i < tokens; ++i) text += i ? " w" : "w";
    std::vector<std::vector<mind::Document>> shards(4);
    for (std::size_t s = 0; s < shards.size(); ++s) {
      for (int i = 0; i < 250; ++i) shards[s].push_back({prefix + std::to_string(i), text, "", {}});
    }
    return std::make_unique<mind::MemorySource>(std::move(shards));
  };
  std::map<std::string, std::unique_ptr<mind::DocumentSource>> m;
  m["math"] = make("m", 40);
  m["web"] = make("w", 25);
  m["code"] = make("c", 60);
  return m;
}

void BM_BlendSampler(benchmark::State& state) {
  const auto manifest = mind::compute_blend(
      {{"math", "", 40'000, 2}, {"web", "", 25'000, 1}, {"code", "", 60'000, 1}},
      static_cast<std::uint64_t>(state.range(0)), 42);
  std::size_t docs = 0;
  for (auto _ : state) {
    state.PauseTiming();
    auto src = sources();
    state.ResumeTiming();
    mind::BlendSampler s(manifest, std::move(src), mind::TokenizerSpec{});
    while (auto d = s.next()) benchmark::DoNotOptimize(d);
    docs = s.emitted_documents();
  }
  state.counters["documents"] = static_cast<double>(docs);
}
BENCHMARK(BM_BlendSampler)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_ComputeBlend(benchmark::State& state) {
  std::vector<mind::DatasetSpec> specs;
  for (int i = 0; i < state.range(0); ++i) {
    specs.push_back({"s" + std::to_string(i), "", 1'000'000'000ULL + static_cast<std::uint64_t>(i),
                     1.0 + i % 7});
  }
  for (auto _ : state) benchmark::DoNotOptimize(mind::compute_blend(specs, 50'000'000'000ULL, 0));
}
BENCHMARK(BM_ComputeBlend)->Arg(3)->Arg(100);

}  // namespace
