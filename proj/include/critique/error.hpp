// Copyright 2026 The Authors.
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
#include <string_view>

namespace critique {

enum class ErrorCode {
  parse,          // malformed input syntax
  validation,     // well-formed input violating a domain rule
  type,           // operation applied to the wrong attribute kind
  domain,         // numeric argument outside its admissible range
  config,         // inconsistent configuration or spec
  not_found,      // unknown catalog, session or option
  conflict,       // operation not allowed in the current state
  empty_model,    // no preference stated yet
  no_suggestion,  // every attribute already carries a preference
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `field` names the offending
/// attribute, option or flag when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace critique
