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

#include "readiness/error.hpp"

namespace readiness {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDuplicateColumnName: return "DuplicateColumnName";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidParameterValue: return "InvalidParameterValue";
    case ErrorCode::kProfileMismatch: return "ProfileMismatch";
    case ErrorCode::kPlanSyntaxError: return "PlanSyntaxError";
    case ErrorCode::kUnknownStepKind: return "UnknownStepKind";
    case ErrorCode::kMissingParameter: return "MissingParameter";
    case ErrorCode::kColumnNotFound: return "ColumnNotFound";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kChainBroken: return "ChainBroken";
    case ErrorCode::kBaselineMismatch: return "BaselineMismatch";
    case ErrorCode::kReplayDivergence: return "ReplayDivergence";
    case ErrorCode::kSidecarNotFound: return "SidecarNotFound";
    case ErrorCode::kSidecarSyntaxError: return "SidecarSyntaxError";
    case ErrorCode::kUnsupportedDataType: return "UnsupportedDataType";
    case ErrorCode::kDigestMismatch: return "DigestMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(std::move(message)) {}

Error Error::with_step_index(std::size_t index) const {
  Error annotated(code_, "step " + std::to_string(index) + ": " + message_);
  annotated.step_index_ = index;
  return annotated;
}

}  // namespace readiness
