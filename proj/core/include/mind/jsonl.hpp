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
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mind {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Compact single-line dump. Invalid UTF-8 is replaced, never thrown on.
std::string dump_line(const ordered_json& j);
std::string dump_line(const json& j);

/// Appends one JSON document per line. Flushes on every write when
/// `durable` is set, so a killed process leaves at most one partial line.
class JsonlWriter {
 public:
  enum class Mode { kTruncate, kAppend };

  JsonlWriter(const std::filesystem::path& path, Mode mode = Mode::kTruncate, bool durable = false);

  void write(const ordered_json& j);
  void write(const json& j);
  void write_raw_line(std::string_view line);
  void flush();
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool durable_;
};

/// Calls `fn(line, line_number)` for each nonblank line (1-based numbering).
/// Throws IoError if the file cannot be opened.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::string_view, std::size_t)>& fn);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Creates the directory (and parents). Throws IoError if that fails or the
/// directory is not writable.
void ensure_writable_dir(const std::filesystem::path& dir);

}  // namespace mind
