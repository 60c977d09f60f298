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

#include <random>

#include "mind/corpus.hpp"

namespace {

std::string text_of(std::size_t tokens) {
  std::mt19937_64 rng(1);
  std::string s;
  for (std::size_t i = 0; i < tokens; ++i) {
    s += "tok" + std::to_string(rng() % 5000);
    s += (i % 17 == 16) ? '\n' : ' ';
  }
  return s;
}

void BM_ChunkDocument(benchmark::State& state) {
  const mind::Document doc{"d", text_of(static_cast<std::size_t>(state.range(0))), "", {}};
  const mind::TokenizerSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(mind::chunk_document(doc, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChunkDocument)->Arg(500)->Arg(5000)->Arg(50000);

void BM_CountTokens(benchmark::State& state) {
  const auto text = text_of(static_cast<std::size_t>(state.range(0)));
  const mind::TokenizerSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(mind::count_tokens(text, spec));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_CountTokens)->Arg(5000);

}  // namespace
