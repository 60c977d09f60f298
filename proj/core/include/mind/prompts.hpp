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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mind {

/// The seven conversational styles in canonical order. The order decides
/// tie-breaks in longest selection and the sequence of concatenated output.
inline constexpr std::array<std::string_view, 7> kCanonicalStyles = {
    "two_professors", "teacher_student", "two_students", "interview",
    "problem_solving", "layman_knowall", "debate",
};

/// Phrase shared by every style instruction; checked on load.
inline constexpr std::string_view kFaithfulnessClause = "DONOT add any new information";

/// Position of a style in canonical order; extension styles sort after the
/// seven built-ins.
std::size_t canonical_rank(std::string_view style) noexcept;

/// Canonical order, then by key for extension styles.
bool style_before(std::string_view a, std::string_view b) noexcept;

/// Style instructions and the judge rubric, loaded from a templates directory.
///
/// Each style is a UTF-8 file named exactly after its key (no extension).
/// All seven canonical styles must be present; further files extend the set.
/// The judge rubric lives in `judge_rubric.txt` with `{context}` and
/// `{conversation}` placeholders. One trailing newline is stripped from
/// every file. Immutable after load.
class PromptRegistry {
 public:
  static constexpr std::string_view kRubricFile = "judge_rubric.txt";

  static PromptRegistry load(const std::filesystem::path& dir);

  /// Loads from MIND_TEMPLATES if set, else the installed or source-tree
  /// templates directory.
  static PromptRegistry load_default();
  static std::filesystem::path default_dir();

  std::vector<std::string> list_styles() const;
  bool contains(std::string_view style) const;

  /// Throws ConfigError for unknown styles.
  const std::string& instruction(std::string_view style) const;

  /// context, one blank line, instruction. Throws ConfigError for unknown
  /// styles and ValidationError for an empty context.
  std::string render(std::string_view style, std::string_view context) const;

  const std::string& rubric() const noexcept { return rubric_; }

  /// Fills the rubric placeholders.
  std::string render_rubric(std::string_view context, std::string_view conversation) const;

 private:
  std::map<std::string, std::string, std::less<>> instructions_;
  std::vector<std::string> order_;
  std::string rubric_;
};

}  // namespace mind
