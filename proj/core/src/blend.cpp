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

#include "mind/blend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mind/completion_client.hpp"
#include "mind/error.hpp"

namespace mind {

namespace {

__extension__ typedef __int128 i128;

// Uniform draw in [0, n) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t get_u64(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_unsigned()) {
    throw ValidationError(std::string("blend manifest: '") + field + "' must be a nonnegative integer");
  }
  return j[field].get<std::uint64_t>();
}

}  // namespace

double epochs_for(std::uint64_t tokens_to_see, std::uint64_t dataset_tokens) {
  if (dataset_tokens == 0) throw ValidationError("epochs_for: dataset has zero tokens");
  const long double e = static_cast<long double>(tokens_to_see) / static_cast<long double>(dataset_tokens);
  return static_cast<double>(std::round(e * 1000.0L) / 1000.0L);
}

BlendManifest compute_blend(const std::vector<DatasetSpec>& specs, std::uint64_t budget_tokens, std::uint64_t seed) {
  if (specs.empty()) throw ValidationError("blend needs at least one dataset");
  if (budget_tokens == 0) throw ValidationError("blend budget must be positive");
  std::set<std::string> names;
  long double total_weight = 0;
  for (const auto& s : specs) {
    if (!(s.weight > 0) || !std::isfinite(s.weight)) {
      throw ValidationError("dataset '" + s.name + "' needs a positive weight");
    }
    if (s.total_tokens == 0) throw ValidationError("dataset '" + s.name + "' has zero tokens");
    if (!names.insert(s.name).second) throw ValidationError("dataset '" + s.name + "' listed twice");
    total_weight += s.weight;
  }

  BlendManifest m;
  m.budget_tokens = budget_tokens;
  m.seed = seed;
  std::vector<long double> remainders;
  std::uint64_t assigned = 0;
  for (const auto& s : specs) {
    const long double quota = static_cast<long double>(budget_tokens) * s.weight / total_weight;
    const long double floor = std::floor(quota);
    auto tokens = static_cast<std::uint64_t>(floor);
    tokens = std::min(tokens, budget_tokens - assigned);
    assigned += tokens;
    remainders.push_back(quota - floor);
    m.allocations.push_back(
        BlendAllocation{s.name, tokens, 0.0, static_cast<double>(s.weight / total_weight)});
  }
  std::vector<std::size_t> order(specs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < budget_tokens; k = (k + 1) % order.size()) {
    ++m.allocations[order[k]].tokens_to_see;
    ++assigned;
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    m.allocations[i].epochs = epochs_for(m.allocations[i].tokens_to_see, specs[i].total_tokens);
  }
  return m;
}

ordered_json to_json(const BlendManifest& m) {
  ordered_json j;
  j["budget_tokens"] = m.budget_tokens;
  j["seed"] = m.seed;
  j["allocations"] = ordered_json::array();
  for (const auto& a : m.allocations) {
    ordered_json e;
    e["name"] = a.name;
    e["tokens_to_see"] = a.tokens_to_see;
    e["epochs"] = a.epochs;
    e["normalized_weight"] = a.normalized_weight;
    j["allocations"].push_back(std::move(e));
  }
  return j;
}

BlendManifest manifest_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("blend manifest must be a JSON object");
  BlendManifest m;
  m.budget_tokens = get_u64(j, "budget_tokens");
  m.seed = get_u64(j, "seed");
  if (!j.contains("allocations") || !j["allocations"].is_array() || j["allocations"].empty()) {
    throw ValidationError("blend manifest: 'allocations' must be a nonempty array");
  }
  std::uint64_t sum = 0;
  for (const auto& e : j["allocations"]) {
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
      throw ValidationError("blend manifest: allocation without a name");
    }
    BlendAllocation a;
    a.name = e["name"].get<std::string>();
    a.tokens_to_see = get_u64(e, "tokens_to_see");
    if (!e.contains("epochs") || !e["epochs"].is_number() || !e.contains("normalized_weight") ||
        !e["normalized_weight"].is_number()) {
      throw ValidationError("blend manifest: allocation '" + a.name + "' lacks epochs or normalized_weight");
    }
    a.epochs = e["epochs"].get<double>();
    a.normalized_weight = e["normalized_weight"].get<double>();
    sum += a.tokens_to_see;
    m.allocations.push_back(std::move(a));
  }
  if (sum != m.budget_tokens) {
    throw ValidationError("blend manifest: allocations sum to " + std::to_string(sum) + ", budget is " +
                          std::to_string(m.budget_tokens));
  }
  return m;
}

MemorySource::MemorySource(std::vector<std::vector<Document>> shards) : shards_(std::move(shards)) {}

void MemorySource::open_shard(std::size_t i) {
  shard_ = i;
  pos_ = 0;
}

std::optional<Document> MemorySource::next() {
  if (shard_ >= shards_.size() || pos_ >= shards_[shard_].size()) return std::nullopt;
  return shards_[shard_][pos_++];
}

FileSource::FileSource(std::vector<std::filesystem::path> shards) : shards_(std::move(shards)) {}

void FileSource::open_shard(std::size_t i) { reader_ = std::make_unique<CorpusReader>(shards_.at(i)); }

std::optional<Document> FileSource::next() {
  if (!reader_) return std::nullopt;
  return reader_->next();
}

std::vector<std::size_t> shard_order(std::size_t shards, std::uint64_t seed, const std::string& name,
                                     std::uint64_t epoch) {
  std::vector<std::size_t> order(shards);
  std::iota(order.begin(), order.end(), 0);
  if (epoch == 0 || shards < 2) return order;
  std::mt19937_64 rng(mix64(seed ^ mix64(fnv1a64(name) ^ mix64(epoch))));
  for (std::size_t i = shards - 1; i > 0; --i) {
    std::swap(order[i], order[draw_below(rng, i + 1)]);
  }
  return order;
}

BlendSampler::BlendSampler(BlendManifest manifest, std::map<std::string, std::unique_ptr<DocumentSource>> sources,
                           TokenizerSpec spec)
    : manifest_(std::move(manifest)), spec_(std::move(spec)) {
  spec_.validate();
  if (manifest_.allocations.empty()) throw ValidationError("blend manifest has no allocations");
  for (const auto& a : manifest_.allocations) {
    auto it = sources.find(a.name);
    if (it == sources.end() || !it->second) throw ValidationError("no source for blend allocation '" + a.name + "'");
    if (it->second->shard_count() == 0) throw ValidationError("blend source '" + a.name + "' has no shards");
    State st;
    st.source = std::move(it->second);
    states_.push_back(std::move(st));
  }
}

std::optional<Document> BlendSampler::pull(std::size_t i) {
  auto& st = states_[i];
  const auto& name = manifest_.allocations[i].name;
  if (!st.started) {
    st.order = shard_order(st.source->shard_count(), manifest_.seed, name, 0);
    st.source->open_shard(st.order[0]);
    st.started = true;
  }
  // Bounded by one full pass: an empty pass is an error.
  for (;;) {
    if (auto doc = st.source->next()) return doc;
    if (++st.order_pos == st.order.size()) {
      if (st.epoch_tokens == 0) throw ValidationError("blend source '" + name + "' has no tokens");
      ++st.epoch;
      st.epoch_tokens = 0;
      st.order = shard_order(st.source->shard_count(), manifest_.seed, name, st.epoch);
      st.order_pos = 0;
    }
    st.source->open_shard(st.order[st.order_pos]);
  }
}

std::optional<Document> BlendSampler::next() {
  const i128 budget = manifest_.budget_tokens;
  std::optional<std::size_t> pick;
  i128 best = 0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto& a = manifest_.allocations[i];
    if (states_[i].emitted >= a.tokens_to_see) continue;
    // deficit * budget, exact.
    const i128 deficit = static_cast<i128>(a.tokens_to_see) * total_ - static_cast<i128>(states_[i].emitted) * budget;
    if (!pick || deficit > best) {
      pick = i;
      best = deficit;
    }
  }
  if (!pick) return std::nullopt;

  auto& st = states_[*pick];
  Document doc = *pull(*pick);
  const std::uint64_t n = count_tokens(doc.text, spec_);
  st.emitted += n;
  st.epoch_tokens += n;
  total_ += n;
  ++documents_;
  const auto& name = manifest_.allocations[*pick].name;
  doc.id = name + ":" + doc.id + "#e" + std::to_string(st.epoch);
  doc.source = name;
  return doc;
}

std::vector<Document> sample_blend(const BlendManifest& manifest,
                                   std::map<std::string, std::unique_ptr<DocumentSource>> sources,
                                   const TokenizerSpec& spec) {
  BlendSampler sampler(manifest, std::move(sources), spec);
  std::vector<Document> out;
  while (auto d = sampler.next()) out.push_back(std::move(*d));
  return out;
}

std::uint64_t count_corpus_tokens(const std::vector<std::filesystem::path>& paths, const TokenizerSpec& spec) {
  std::uint64_t total = 0;
  for (const auto& p : paths) {
    CorpusReader reader(p);
    while (auto d = reader.next()) total += count_tokens(d->text, spec);
  }
  return total;
}

}  // namespace mind
