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

// Deliberately naive reference implementations used to cross-check the
// library: linear-scan n-gram counts, LCS by subsequence enumeration,
// longest selection by scanning styles in canonical order.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mind/generation.hpp"
#include "mind/tokenizer.hpp"

namespace oracle {

using Tokens = std::vector<std::string>;

double bleu(const Tokens& ref, const Tokens& cand);
double rouge_n(const Tokens& ref, const Tokens& cand, std::size_t n);
/// Exponential in |cand|; for short inputs only.
double rouge_l(const Tokens& ref, const Tokens& cand);
std::size_t lcs_by_enumeration(const Tokens& a, const Tokens& b);

/// Index of the record with the most tokens, earliest canonical style on ties.
std::size_t longest_index(std::span<const mind::Conversation> group, const mind::TokenizerSpec& spec);

/// Every token sequence of length 1..max_len over `alphabet`.
std::vector<Tokens> all_strings(const Tokens& alphabet, std::size_t max_len);

/// Random text of `n` tokens from a small vocabulary with mixed whitespace
/// (spaces, tabs, newlines, no-break and ideographic spaces).
std::string random_text(std::mt19937_64& rng, std::size_t n);

}  // namespace oracle
