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

#include "mind/jsonl.hpp"

#include <cstdio>
#include <sstream>

#include <unistd.h>

#include "mind/error.hpp"

namespace mind {

namespace fs = std::filesystem;

std::string dump_line(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
}

std::string dump_line(const json& j) {
  return j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
}

JsonlWriter::JsonlWriter(const fs::path& path, Mode mode, bool durable) : path_(path), durable_(durable) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | (mode == Mode::kAppend ? std::ios::app : std::ios::trunc));
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
}

void JsonlWriter::write(const ordered_json& j) { write_raw_line(dump_line(j)); }

void JsonlWriter::write(const json& j) { write_raw_line(dump_line(j)); }

void JsonlWriter::write_raw_line(std::string_view line) {
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.put('\n');
  if (durable_) out_.flush();
  if (!out_) throw IoError("write failed on " + path_.string());
}

void JsonlWriter::flush() {
  out_.flush();
  if (!out_) throw IoError("flush failed on " + path_.string());
}

void for_each_line(const fs::path& path, const std::function<void(std::string_view, std::size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, lineno);
  }
  if (in.bad()) throw IoError("read failed on " + path.string());
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed on " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
  if (::access(dir.c_str(), W_OK) != 0) throw IoError("directory is not writable: " + dir.string());
}

}  // namespace mind
