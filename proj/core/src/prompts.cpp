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

#include "mind/prompts.hpp"

#include <algorithm>
#include <cstdlib>

#include "mind/error.hpp"
#include "mind/jsonl.hpp"

namespace mind {

namespace fs = std::filesystem;

namespace {

std::string strip_trailing_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool valid_style_key(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

}  // namespace

std::size_t canonical_rank(std::string_view style) noexcept {
  for (std::size_t i = 0; i < kCanonicalStyles.size(); ++i) {
    if (kCanonicalStyles[i] == style) return i;
  }
  return kCanonicalStyles.size();
}

bool style_before(std::string_view a, std::string_view b) noexcept {
  const auto ra = canonical_rank(a);
  const auto rb = canonical_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

PromptRegistry PromptRegistry::load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("templates directory not found: " + dir.string());

  PromptRegistry reg;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == kRubricFile) {
      reg.rubric_ = strip_trailing_newline(read_file(entry.path()));
      continue;
    }
    if (entry.path().has_extension() || !valid_style_key(name)) continue;
    std::string text = strip_trailing_newline(read_file(entry.path()));
    if (text.find(kFaithfulnessClause) == std::string::npos) {
      throw ConfigError("style template '" + name + "' lacks the clause \"" + std::string(kFaithfulnessClause) + "\"");
    }
    reg.instructions_.emplace(name, std::move(text));
  }

  for (auto style : kCanonicalStyles) {
    if (!reg.instructions_.contains(style)) {
      throw ConfigError("templates directory " + dir.string() + " is missing style '" + std::string(style) + "'");
    }
  }
  if (reg.rubric_.empty()) throw ConfigError("templates directory " + dir.string() + " has no " + std::string(kRubricFile));
  if (reg.rubric_.find("{context}") == std::string::npos || reg.rubric_.find("{conversation}") == std::string::npos) {
    throw ConfigError(std::string(kRubricFile) + " must contain {context} and {conversation}");
  }

  for (const auto& [k, _] : reg.instructions_) reg.order_.push_back(k);
  std::sort(reg.order_.begin(), reg.order_.end(), [](const auto& a, const auto& b) { return style_before(a, b); });
  return reg;
}

fs::path PromptRegistry::default_dir() {
  if (const char* env = std::getenv("MIND_TEMPLATES"); env != nullptr && *env != '\0') return env;
  const fs::path installed = MIND_INSTALL_TEMPLATE_DIR;
  if (fs::is_directory(installed)) return installed;
  return MIND_SOURCE_TEMPLATE_DIR;
}

PromptRegistry PromptRegistry::load_default() { return load(default_dir()); }

std::vector<std::string> PromptRegistry::list_styles() const { return order_; }

bool PromptRegistry::contains(std::string_view style) const { return instructions_.find(style) != instructions_.end(); }

const std::string& PromptRegistry::instruction(std::string_view style) const {
  auto it = instructions_.find(style);
  if (it == instructions_.end()) throw ConfigError("unknown style '" + std::string(style) + "'");
  return it->second;
}

std::string PromptRegistry::render(std::string_view style, std::string_view context) const {
  const std::string& inst = instruction(style);
  if (context.empty()) throw ValidationError("cannot render a prompt for an empty context");
  std::string out;
  out.reserve(context.size() + 2 + inst.size());
  out.append(context);
  out.append("\n\n");
  out.append(inst);
  return out;
}

std::string PromptRegistry::render_rubric(std::string_view context, std::string_view conversation) const {
  // Substituted text is never rescanned for the other placeholder.
  std::string out = rubric_;
  const auto ctx_pos = out.find("{context}");
  const auto conv_pos = out.find("{conversation}");
  if (ctx_pos < conv_pos) {
    out.replace(conv_pos, 14, conversation);
    out.replace(ctx_pos, 9, context);
  } else {
    out.replace(ctx_pos, 9, context);
    out.replace(conv_pos, 14, conversation);
  }
  return out;
}

}  // namespace mind
