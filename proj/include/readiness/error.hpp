// Copyright 2026 The Readiness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace readiness {

enum class ErrorCode {
  kFileNotFound,
  kParseError,
  kEmptyDataset,
  kDuplicateColumnName,
  kIoError,
  kInvalidParameterValue,
  kProfileMismatch,
  kPlanSyntaxError,
  kUnknownStepKind,
  kMissingParameter,
  kColumnNotFound,
  kTypeMismatch,
  kNotApplicable,
  kChainBroken,
  kBaselineMismatch,
  kReplayDivergence,
  kSidecarNotFound,
  kSidecarSyntaxError,
  kUnsupportedDataType,
  kDigestMismatch,
};

// Stable identifier, e.g. "FileNotFound". Printed by the CLI.
std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library. what() reads "<Code>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

  // Set when the error was raised while applying a remediation plan.
  std::optional<std::size_t> step_index() const noexcept { return step_index_; }
  Error with_step_index(std::size_t index) const;

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<std::size_t> step_index_;
};

}  // namespace readiness
