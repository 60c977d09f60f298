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

#include "mind/analysis.hpp"

namespace {

std::string words(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += "w" + std::to_string(rng() % 300) + " ";
  return s;
}

// Chunk-sized reference against a dialogue of similar length.
void BM_Bleu(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = words(n, 1), cand = words(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mind::bleu(ref, cand));
}
BENCHMARK(BM_Bleu)->Arg(100)->Arg(500)->Arg(1000);

void BM_Rouge(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = words(n, 1), cand = words(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mind::rouge(ref, cand));
}
BENCHMARK(BM_Rouge)->Arg(100)->Arg(500)->Arg(1000);

}  // namespace
