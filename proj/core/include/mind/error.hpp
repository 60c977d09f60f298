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

#include <stdexcept>
#include <string>

namespace mind {

/// Base of every error the pipeline raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: unknown tokenizer or style, out-of-range settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a contract (duplicate ids, empty sides, mismatched keys).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The rendered prompt leaves no room for output under the token limit.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Judge reply is missing a metric or carries an out-of-range value.
class ScoreParseError : public ValidationError {
 public:
  ScoreParseError(std::string metric, const std::string& what)
      : ValidationError(what), metric_(std::move(metric)) {}
  const std::string& metric() const noexcept { return metric_; }

 private:
  std::string metric_;
};

/// Rank correlation is undefined because one side has zero rank variance.
class UndefinedCorrelation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Failure talking to a completion endpoint.
class EndpointError : public Error {
 public:
  using Error::Error;
};

/// Connection, timeout, rate limit or 5xx. Retried.
class TransportError : public EndpointError {
 public:
  using EndpointError::EndpointError;
};

/// The endpoint answered but the exchange cannot succeed by retrying.
class ProtocolError : public EndpointError {
 public:
  using EndpointError::EndpointError;
};

/// Process exit codes used by the command line tool.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kEndpoint = 3,
};

/// Maps an exception thrown by the library onto the tool's exit code.
ExitCode exit_code_for(const std::exception& e) noexcept;

}  // namespace mind
