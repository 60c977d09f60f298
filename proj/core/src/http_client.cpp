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

#include <httplib.h>

#include "mind/completion_client.hpp"

namespace mind {

HttpCompletionClient::HttpCompletionClient(std::string endpoint_url, std::optional<std::string> api_key,
                                           std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  const auto scheme_end = endpoint_url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint must be a URL or 'mock': " + endpoint_url);
  const std::string scheme = endpoint_url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw ConfigError("unsupported endpoint scheme: " + scheme);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") throw ConfigError("built without TLS support; use an http:// endpoint");
#endif
  const auto path_start = endpoint_url.find('/', scheme_end + 3);
  origin_ = endpoint_url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/v1/chat/completions" : endpoint_url.substr(path_start);
}

ChatResponse HttpCompletionClient::complete(const ChatRequest& req) {
  // One client per call keeps this thread-safe without a connection pool.
  httplib::Client cli(origin_);
  cli.set_connection_timeout(std::chrono::seconds(30));
  cli.set_read_timeout(timeout_);
  cli.set_write_timeout(std::chrono::seconds(60));

  httplib::Headers headers;
  if (api_key_) headers.emplace("Authorization", "Bearer " + *api_key_);

  auto res = cli.Post(path_, headers, dump_line(to_wire(req)), "application/json");
  if (!res) throw TransportError("request to " + origin_ + path_ + " failed: " + httplib::to_string(res.error()));

  const int status = res->status;
  if (status == 408 || status == 429 || status >= 500) {
    throw TransportError("endpoint returned HTTP " + std::to_string(status));
  }
  if (status != 200) {
    throw ProtocolError("endpoint returned HTTP " + std::to_string(status) + ": " + res->body.substr(0, 512));
  }
  return parse_wire_response(res->body);
}

}  // namespace mind
