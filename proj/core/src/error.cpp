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

#include "mind/error.hpp"

namespace mind {

ExitCode exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const EndpointError*>(&e) != nullptr) return ExitCode::kEndpoint;
  if (dynamic_cast<const ValidationError*>(&e) != nullptr) return ExitCode::kValidation;
  if (dynamic_cast<const BudgetExhausted*>(&e) != nullptr) return ExitCode::kValidation;
  // ConfigError, IoError and anything unexpected.
  return ExitCode::kUsage;
}

}  // namespace mind
