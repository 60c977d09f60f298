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

#include "mind/blend.hpp"
#include "mind/error.hpp"
#include "test_env.hpp"

using namespace mind;

namespace {

std::vector<std::vector<Document>> docs_of(const std::string& name, std::size_t shards, std::size_t per_shard,
                                           std::size_t tokens) {
  std::vector<std::vector<Document>> out(shards);
  std::string text;
  for (std::size_t i = 0; i < tokens; ++i) text += i ? " t" : "t";
  for (std::size_t s = 0; s < shards; ++s) {
    for (std::size_t i = 0; i < per_shard; ++i) {
      out[s].push_back(Document{name + std::to_string(s) + "_" + std::to_string(i), text, "", {}});
    }
  }
  return out;
}

std::map<std::string, std::unique_ptr<DocumentSource>> two_sources() {
  std::map<std::string, std::unique_ptr<DocumentSource>> m;
  m["math"] = std::make_unique<MemorySource>(docs_of("m", 3, 4, 10));
  m["web"] = std::make_unique<MemorySource>(docs_of("w", 2, 5, 7));
  return m;
}

}  // namespace

TEST(ComputeBlend, TwoToOneOverFiftyBillion) {
  const auto m = compute_blend({{"math", "", 14'000'000'000, 2}, {"web", "", 1'000'000'000'000, 1}},
                               50'000'000'000, 7);
  ASSERT_EQ(m.allocations.size(), 2u);
  const auto a = m.allocations[0].tokens_to_see, b = m.allocations[1].tokens_to_see;
  EXPECT_EQ(a + b, 50'000'000'000u);
  EXPECT_EQ(a, 33'333'333'333u);
  EXPECT_EQ(b, 16'666'666'667u);
  EXPECT_DOUBLE_EQ(m.allocations[0].epochs, 2.381);
  EXPECT_NEAR(m.allocations[0].normalized_weight, 2.0 / 3, 1e-15);
  EXPECT_EQ(m.seed, 7u);
}

TEST(ComputeBlend, SmallBudgets) {
  auto m = compute_blend({{"a", "", 1000, 2}, {"b", "", 1000, 1}}, 300, 0);
  EXPECT_EQ(m.allocations[0].tokens_to_see, 200u);
  EXPECT_EQ(m.allocations[1].tokens_to_see, 100u);
  m = compute_blend({{"only", "", 150, 5}}, 300, 0);
  EXPECT_EQ(m.allocations[0].tokens_to_see, 300u);
  EXPECT_DOUBLE_EQ(m.allocations[0].epochs, 2.0);
  m = compute_blend({{"a", "", 1, 1}, {"b", "", 1, 1}, {"c", "", 1, 1}}, 2, 0);
  EXPECT_EQ(m.allocations[0].tokens_to_see + m.allocations[1].tokens_to_see + m.allocations[2].tokens_to_see, 2u);
  EXPECT_EQ(m.allocations[2].tokens_to_see, 0u);
}

TEST(ComputeBlend, Errors) {
  EXPECT_THROW(compute_blend({}, 10, 0), ValidationError);
  EXPECT_THROW(compute_blend({{"a", "", 10, 1}}, 0, 0), ValidationError);
  EXPECT_THROW(compute_blend({{"a", "", 10, 0}}, 10, 0), ValidationError);
  EXPECT_THROW(compute_blend({{"a", "", 10, -1}}, 10, 0), ValidationError);
  EXPECT_THROW(compute_blend({{"a", "", 0, 1}}, 10, 0), ValidationError);
  EXPECT_THROW(compute_blend({{"a", "", 10, 1}, {"a", "", 10, 1}}, 10, 0), ValidationError);
}

TEST(EpochsFor, Arithmetic) {
  EXPECT_DOUBLE_EQ(epochs_for(32'000'000'000, 4'000'000'000), 8.0);
  EXPECT_DOUBLE_EQ(epochs_for(123, 123), 1.0);
  EXPECT_DOUBLE_EQ(epochs_for(7'000'000'000, 14'000'000'000), 0.5);
  EXPECT_DOUBLE_EQ(epochs_for(1, 3), 0.333);
  EXPECT_THROW(epochs_for(1, 0), ValidationError);
}

TEST(Manifest, JsonRoundTripAndFieldSet) {
  const auto m = compute_blend({{"a", "", 1000, 2}, {"b", "", 1000, 1}}, 300, 9);
  const auto j = to_json(m);
  EXPECT_EQ(j.dump(),
            R"({"budget_tokens":300,"seed":9,"allocations":[{"name":"a","tokens_to_see":200,"epochs":0.2,"normalized_weight":0.6666666666666666},{"name":"b","tokens_to_see":100,"epochs":0.1,"normalized_weight":0.3333333333333333}]})");
  EXPECT_EQ(manifest_from_json(json::parse(j.dump())), m);
  auto bad = json::parse(j.dump());
  bad["allocations"][0]["tokens_to_see"] = 1;
  EXPECT_THROW(manifest_from_json(bad), ValidationError);
}

TEST(ShardOrder, FirstEpochIsIdentityLaterEpochsPermute) {
  EXPECT_EQ(shard_order(4, 1, "x", 0), (std::vector<std::size_t>{0, 1, 2, 3}));
  auto later = shard_order(20, 1, "x", 1);
  auto sorted = later;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, shard_order(20, 1, "x", 0));
  EXPECT_NE(later, sorted);
  EXPECT_EQ(later, shard_order(20, 1, "x", 1));
  EXPECT_NE(later, shard_order(20, 2, "x", 1));
}

TEST(BlendSampler, SingleSourceRepeatsDataset) {
  std::map<std::string, std::unique_ptr<DocumentSource>> m;
  m["only"] = std::make_unique<MemorySource>(docs_of("d", 1, 3, 5));
  const auto manifest = compute_blend({{"only", "", 15, 1}}, 30, 0);
  const auto out = sample_blend(manifest, std::move(m), TokenizerSpec{});
  ASSERT_EQ(out.size(), 6u);
  EXPECT_EQ(out[0].id, "only:d0_0#e0");
  EXPECT_EQ(out[3].id, "only:d0_0#e1");
  EXPECT_EQ(out[5].source, "only");
}

TEST(BlendSampler, MeetsEveryAllocationWithWholeDocuments) {
  const auto manifest = compute_blend({{"math", "", 120, 2}, {"web", "", 70, 1}}, 1000, 3);
  BlendSampler s(manifest, two_sources(), TokenizerSpec{});
  while (s.next()) {
  }
  EXPECT_GE(s.emitted_tokens(0), manifest.allocations[0].tokens_to_see);
  EXPECT_LT(s.emitted_tokens(0), manifest.allocations[0].tokens_to_see + 10);
  EXPECT_GE(s.emitted_tokens(1), manifest.allocations[1].tokens_to_see);
  EXPECT_LT(s.emitted_tokens(1), manifest.allocations[1].tokens_to_see + 7);
}

TEST(BlendSampler, DeterministicForSeed) {
  const auto manifest = compute_blend({{"math", "", 120, 2}, {"web", "", 70, 1}}, 2000, 11);
  const auto a = sample_blend(manifest, two_sources(), TokenizerSpec{});
  const auto b = sample_blend(manifest, two_sources(), TokenizerSpec{});
  EXPECT_EQ(a, b);
  auto other = manifest;
  other.seed = 12;
  EXPECT_NE(sample_blend(other, two_sources(), TokenizerSpec{}), a);
}

TEST(BlendSampler, Errors) {
  const auto manifest = compute_blend({{"math", "", 120, 2}, {"missing", "", 70, 1}}, 100, 0);
  EXPECT_THROW(BlendSampler(manifest, two_sources(), TokenizerSpec{}), ValidationError);
  std::map<std::string, std::unique_ptr<DocumentSource>> empty;
  empty["math"] = std::make_unique<MemorySource>(docs_of("e", 1, 2, 0));
  const auto m2 = compute_blend({{"math", "", 1, 1}}, 10, 0);
  BlendSampler s(m2, std::move(empty), TokenizerSpec{});
  EXPECT_THROW(while (s.next()) {}, ValidationError);
}

TEST(FileSource, ReadsCorpusShards) {
  testenv::TempDir tmp;
  testenv::write_text(tmp / "a.jsonl", "{\"id\":\"1\",\"text\":\"a b\"}\n");
  testenv::write_text(tmp / "b.jsonl", "{\"id\":\"2\",\"text\":\"c\"}\n");
  EXPECT_EQ(count_corpus_tokens({tmp / "a.jsonl", tmp / "b.jsonl"}, TokenizerSpec{}), 3u);
  std::map<std::string, std::unique_ptr<DocumentSource>> m;
  m["f"] = std::make_unique<FileSource>(std::vector<testenv::fs::path>{tmp / "a.jsonl", tmp / "b.jsonl"});
  const auto out = sample_blend(compute_blend({{"f", "", 3, 1}}, 3, 0), std::move(m), TokenizerSpec{});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].id, "f:2#e0");
}
