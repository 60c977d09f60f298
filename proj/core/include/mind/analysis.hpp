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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mind/corpus.hpp"
#include "mind/generation.hpp"
#include "mind/tokenizer.hpp"

namespace mind {

// Similarity metrics. Strings are tokenized with metric_tokens()
// (whitespace split, ASCII lowercase). Both sides must be nonempty after
// tokenization or ValidationError is thrown.

/// Sentence-level BLEU-4 without smoothing: geometric mean of clipped n-gram
/// precisions times exp(min(0, 1 - |ref|/|cand|)). Candidates shorter than
/// four tokens use orders 1..|cand|. Zero as soon as one order has no match.
double bleu(std::string_view reference, std::string_view candidate);
double bleu(std::span<const std::string> reference, std::span<const std::string> candidate);

struct RougeScores {
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
};

/// ROUGE-1/2 F1 over clipped n-gram overlap and ROUGE-L F1 from the longest
/// common subsequence. When neither side has an n-gram of some order the
/// score is 1 for identical token sequences and 0 otherwise.
RougeScores rouge(std::string_view reference, std::string_view candidate);
RougeScores rouge(std::span<const std::string> reference, std::span<const std::string> candidate);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

struct SimilarityPair {
  Chunk raw;
  Conversation conversation;
};

struct SimilarityReport {
  std::string style;
  double bleu_mean = 0.0;
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
  std::size_t n_pairs = 0;
};

/// Joins conversations to their source chunk by (doc_id, chunk_index).
/// Throws ValidationError when a conversation has no chunk.
std::vector<SimilarityPair> pair_with_chunks(std::span<const Chunk> chunks, std::span<const Conversation> convs);

/// Per-style means of pair-level scores (raw chunk as reference, dialogue as
/// candidate), sorted by bleu_mean descending. Throws ValidationError on a
/// pair whose keys disagree or on empty input.
std::vector<SimilarityReport> style_similarity_report(std::span<const SimilarityPair> pairs);

/// One conversation's output length with the size of the chunk it came from.
struct LengthSample {
  std::string style;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
};

struct LengthStats {
  std::string label;  // style key or "[lo,hi)"
  std::size_t lo = 0;
  std::size_t hi = 0;
  double mean_tokens = 0.0;
  double median_tokens = 0.0;
  std::size_t n = 0;
};

enum class BucketBy { kStyle, kInputLength };

/// Mean and median output length per style, or per input-length bucket
/// [edges[i], edges[i+1]). Empty buckets are omitted. Throws ValidationError
/// on empty input or non-increasing edges.
std::vector<LengthStats> length_stats(std::span<const LengthSample> samples, BucketBy by,
                                      std::span<const std::size_t> edges = {});

/// Counts output tokens of ok conversations; input_tokens comes from the
/// matching chunk when `chunks` is nonempty.
std::vector<LengthSample> length_samples(std::span<const Conversation> convs, const TokenizerSpec& spec,
                                         std::span<const Chunk> chunks = {});

/// Spearman rank correlation: Pearson correlation of average ranks.
/// Throws ValidationError for length mismatch or fewer than two points and
/// UndefinedCorrelation when either side has constant ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

/// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> xs);

ordered_json to_json(const SimilarityReport& r);
ordered_json to_json(const LengthStats& s, BucketBy by);

}  // namespace mind
