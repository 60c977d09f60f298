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
#include <unordered_map>

#include "mind/analysis.hpp"
#include "mind/error.hpp"

namespace mind {

namespace {

using Ids = std::vector<std::uint32_t>;

// Maps both token sequences onto shared integer ids.
std::pair<Ids, Ids> intern(std::span<const std::string> a, std::span<const std::string> b) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto map = [&](std::span<const std::string> toks) {
    Ids out;
    out.reserve(toks.size());
    for (const auto& t : toks) {
      auto [it, _] = ids.emplace(t, static_cast<std::uint32_t>(ids.size()));
      out.push_back(it->second);
    }
    return out;
  };
  Ids ia = map(a);
  Ids ib = map(b);
  return {std::move(ia), std::move(ib)};
}

using Gram = std::array<std::uint32_t, 4>;

std::vector<Gram> sorted_ngrams(const Ids& toks, std::size_t n) {
  std::vector<Gram> out;
  if (toks.size() < n) return out;
  out.reserve(toks.size() - n + 1);
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    Gram g{};
    for (std::size_t k = 0; k < n; ++k) g[k] = toks[i + k];
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Sum over distinct grams of min(count in a, count in b); both inputs sorted.
std::size_t clipped_overlap(const std::vector<Gram>& a, const std::vector<Gram>& b) {
  std::size_t i = 0, j = 0, overlap = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++overlap;
      ++i;
      ++j;
    }
  }
  return overlap;
}

double f1(std::size_t overlap, std::size_t n_cand, std::size_t n_ref) {
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(n_cand);
  const double r = static_cast<double>(overlap) / static_cast<double>(n_ref);
  return 2.0 * p * r / (p + r);
}

double rouge_n(const Ids& ref, const Ids& cand, std::size_t n) {
  const auto rg = sorted_ngrams(ref, n);
  const auto cg = sorted_ngrams(cand, n);
  if (rg.empty() && cg.empty()) return ref == cand ? 1.0 : 0.0;
  if (rg.empty() || cg.empty()) return 0.0;
  return f1(clipped_overlap(cg, rg), cg.size(), rg.size());
}

template <typename T>
std::size_t lcs(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

void require_nonempty(std::span<const std::string> ref, std::span<const std::string> cand, const char* metric) {
  if (ref.empty()) throw ValidationError(std::string(metric) + ": reference has no tokens");
  if (cand.empty()) throw ValidationError(std::string(metric) + ": candidate has no tokens");
}

}  // namespace

double bleu(std::span<const std::string> reference, std::span<const std::string> candidate) {
  require_nonempty(reference, candidate, "bleu");
  const auto [ref, cand] = intern(reference, candidate);
  const std::size_t orders = std::min<std::size_t>(4, cand.size());
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    const auto cg = sorted_ngrams(cand, n);
    const auto rg = sorted_ngrams(ref, n);
    const std::size_t matched = clipped_overlap(cg, rg);
    if (matched == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) / static_cast<double>(cg.size()));
  }
  const double ratio = static_cast<double>(ref.size()) / static_cast<double>(cand.size());
  const double bp = std::exp(std::min(0.0, 1.0 - ratio));
  return std::exp(log_sum / static_cast<double>(orders)) * bp;
}

double bleu(std::string_view reference, std::string_view candidate) {
  const auto r = metric_tokens(reference);
  const auto c = metric_tokens(candidate);
  return bleu(r, c);
}

RougeScores rouge(std::span<const std::string> reference, std::span<const std::string> candidate) {
  require_nonempty(reference, candidate, "rouge");
  const auto [ref, cand] = intern(reference, candidate);
  RougeScores s;
  s.rouge1_f = rouge_n(ref, cand, 1);
  s.rouge2_f = rouge_n(ref, cand, 2);
  s.rougeL_f = f1(lcs<std::uint32_t>(ref, cand), cand.size(), ref.size());
  return s;
}

RougeScores rouge(std::string_view reference, std::string_view candidate) {
  const auto r = metric_tokens(reference);
  const auto c = metric_tokens(candidate);
  return rouge(r, c);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) { return lcs(a, b); }

}  // namespace mind
