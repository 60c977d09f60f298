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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mind/analysis.hpp"
#include "mind/error.hpp"
#include "mind/prompts.hpp"

namespace mind {

namespace {

struct Accum {
  double bleu = 0, r1 = 0, r2 = 0, rl = 0;
  std::size_t n = 0;
};

double median_of(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[m]);
  return (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2.0;
}

LengthStats summarize(std::string label, const std::vector<std::size_t>& lens) {
  LengthStats s;
  s.label = std::move(label);
  s.n = lens.size();
  double sum = 0;
  for (auto l : lens) sum += static_cast<double>(l);
  s.mean_tokens = sum / static_cast<double>(lens.size());
  s.median_tokens = median_of(lens);
  return s;
}

std::string chunk_key(const std::string& doc_id, std::size_t index) {
  return doc_id + '\t' + std::to_string(index);
}

}  // namespace

std::vector<SimilarityPair> pair_with_chunks(std::span<const Chunk> chunks, std::span<const Conversation> convs) {
  std::map<std::string, const Chunk*> by_key;
  for (const auto& c : chunks) by_key.emplace(chunk_key(c.doc_id, c.index), &c);
  std::vector<SimilarityPair> out;
  out.reserve(convs.size());
  for (const auto& conv : convs) {
    auto it = by_key.find(chunk_key(conv.doc_id, conv.chunk_index));
    if (it == by_key.end()) {
      throw ValidationError("no chunk for conversation " + conv.doc_id + "#" + std::to_string(conv.chunk_index) +
                            " (" + conv.style + ")");
    }
    out.push_back(SimilarityPair{*it->second, conv});
  }
  return out;
}

std::vector<SimilarityReport> style_similarity_report(std::span<const SimilarityPair> pairs) {
  if (pairs.empty()) throw ValidationError("similarity report needs at least one pair");
  std::map<std::string, Accum> acc;
  for (const auto& p : pairs) {
    if (p.raw.doc_id != p.conversation.doc_id || p.raw.index != p.conversation.chunk_index) {
      throw ValidationError("pair key mismatch: chunk " + p.raw.doc_id + "#" + std::to_string(p.raw.index) +
                            " vs conversation " + p.conversation.doc_id + "#" +
                            std::to_string(p.conversation.chunk_index));
    }
    const auto ref = metric_tokens(p.raw.text);
    const auto cand = metric_tokens(p.conversation.text);
    auto& a = acc[p.conversation.style];
    a.bleu += bleu(ref, cand);
    const auto r = rouge(ref, cand);
    a.r1 += r.rouge1_f;
    a.r2 += r.rouge2_f;
    a.rl += r.rougeL_f;
    ++a.n;
  }
  std::vector<SimilarityReport> out;
  for (const auto& [style, a] : acc) {
    const double n = static_cast<double>(a.n);
    out.push_back(SimilarityReport{style, a.bleu / n, a.r1 / n, a.r2 / n, a.rl / n, a.n});
  }
  std::stable_sort(out.begin(), out.end(), [](const SimilarityReport& x, const SimilarityReport& y) {
    if (x.bleu_mean != y.bleu_mean) return x.bleu_mean > y.bleu_mean;
    return style_before(x.style, y.style);
  });
  return out;
}

std::vector<LengthStats> length_stats(std::span<const LengthSample> samples, BucketBy by,
                                      std::span<const std::size_t> edges) {
  if (samples.empty()) throw ValidationError("length statistics need at least one conversation");
  std::vector<LengthStats> out;
  if (by == BucketBy::kStyle) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (const auto& s : samples) groups[s.style].push_back(s.output_tokens);
    for (const auto& [style, lens] : groups) out.push_back(summarize(style, lens));
    std::sort(out.begin(), out.end(),
              [](const LengthStats& a, const LengthStats& b) { return style_before(a.label, b.label); });
    return out;
  }
  if (edges.size() < 2) throw ValidationError("input-length buckets need at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) throw ValidationError("bucket edges must be strictly increasing");
  }
  std::vector<std::vector<std::size_t>> buckets(edges.size() - 1);
  for (const auto& s : samples) {
    auto it = std::upper_bound(edges.begin(), edges.end(), s.input_tokens);
    if (it == edges.begin() || it == edges.end()) continue;
    buckets[static_cast<std::size_t>(it - edges.begin()) - 1].push_back(s.output_tokens);
  }
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    if (buckets[i].empty()) continue;
    auto st = summarize("[" + std::to_string(edges[i]) + "," + std::to_string(edges[i + 1]) + ")", buckets[i]);
    st.lo = edges[i];
    st.hi = edges[i + 1];
    out.push_back(std::move(st));
  }
  if (out.empty()) throw ValidationError("no conversation falls inside the bucket edges");
  return out;
}

std::vector<LengthSample> length_samples(std::span<const Conversation> convs, const TokenizerSpec& spec,
                                         std::span<const Chunk> chunks) {
  std::map<std::string, std::size_t> inputs;
  for (const auto& c : chunks) inputs.emplace(chunk_key(c.doc_id, c.index), c.token_count);
  std::vector<LengthSample> out;
  for (const auto& conv : convs) {
    if (!conv.ok()) continue;
    LengthSample s{conv.style, 0, count_tokens(conv.text, spec)};
    if (!chunks.empty()) {
      auto it = inputs.find(chunk_key(conv.doc_id, conv.chunk_index));
      if (it == inputs.end()) {
        throw ValidationError("no chunk for conversation " + conv.doc_id + "#" + std::to_string(conv.chunk_index));
      }
      s.input_tokens = it->second;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("spearman: length mismatch (" + std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) throw ValidationError("spearman: need at least two points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) throw ValidationError("spearman: NaN input");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("spearman: constant input has no rank variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ordered_json to_json(const SimilarityReport& r) {
  ordered_json j;
  j["style"] = r.style;
  j["bleu_mean"] = r.bleu_mean;
  j["rouge1_f"] = r.rouge1_f;
  j["rouge2_f"] = r.rouge2_f;
  j["rougeL_f"] = r.rougeL_f;
  j["n_pairs"] = r.n_pairs;
  return j;
}

ordered_json to_json(const LengthStats& s, BucketBy by) {
  ordered_json j;
  if (by == BucketBy::kStyle) {
    j["style"] = s.label;
  } else {
    j["bucket"] = s.label;
    j["lo"] = s.lo;
    j["hi"] = s.hi;
  }
  j["mean_tokens"] = s.mean_tokens;
  j["median_tokens"] = s.median_tokens;
  j["n"] = s.n;
  return j;
}

}  // namespace mind
