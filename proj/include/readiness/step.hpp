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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace readiness {

enum class Persona {
  kDataSteward,
  kSubjectMatterExpert,
  kDataScientist,
  kMlEngineer,
  kDataGovernanceOfficer,
  kOther,
};

std::string_view to_string(Persona persona);
// Throws Error(kInvalidParameterValue).
Persona persona_from_string(std::string_view text);

struct Actor {
  std::string name;
  Persona persona = Persona::kOther;

  bool operator==(const Actor&) const = default;
};

enum class StepKind {
  kImpute,
  kDropRowsMissing,
  kDropColumn,
  kCapOutliers,
  kDropOutlierRows,
  kOversample,
  kUndersample,
  kDedupe,
  kNormalizeValues,
  kDropFlaggedLabels,
};

std::string_view to_string(StepKind kind);
// Throws Error(kUnknownStepKind).
StepKind step_kind_from_string(std::string_view text);

enum class ImputeStrategy { kMean, kMedian, kMode, kConstant };

struct ImputeParams {
  std::string column;
  ImputeStrategy strategy = ImputeStrategy::kMedian;
  std::optional<std::string> value;  // constant strategy only

  bool operator==(const ImputeParams&) const = default;
};

// Empty column list means every column.
struct DropRowsMissingParams {
  std::vector<std::string> columns;

  bool operator==(const DropRowsMissingParams&) const = default;
};

struct DropColumnParams {
  std::string column;

  bool operator==(const DropColumnParams&) const = default;
};

// cap_outliers and drop_outlier_rows. Empty column list means every numeric
// feature column.
struct OutlierParams {
  std::vector<std::string> columns;
  double iqr_multiplier = 1.5;

  bool operator==(const OutlierParams&) const = default;
};

// oversample and undersample. Column defaults to the dataset's target.
struct SamplingParams {
  double target_ratio = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::string> column;

  bool operator==(const SamplingParams&) const = default;
};

struct DedupeParams {
  bool operator==(const DedupeParams&) const = default;
};

struct NormalizeTransform {
  enum class Kind { kTrim, kLowercase, kMap };
  Kind kind = Kind::kTrim;
  std::map<std::string, std::string> mapping;

  bool operator==(const NormalizeTransform&) const = default;
};

struct NormalizeParams {
  std::string column;
  std::vector<NormalizeTransform> transforms;

  bool operator==(const NormalizeParams&) const = default;
};

struct DropFlaggedLabelsParams {
  double threshold = 0.5;
  std::size_t k = 5;

  bool operator==(const DropFlaggedLabelsParams&) const = default;
};

using StepParams = std::variant<ImputeParams, DropRowsMissingParams, DropColumnParams, OutlierParams,
                                SamplingParams, DedupeParams, NormalizeParams,
                                DropFlaggedLabelsParams>;

struct RemediationStep {
  StepKind kind = StepKind::kDedupe;
  StepParams params = DedupeParams{};
  std::string rationale;
  std::optional<Actor> actor;  // absent on tool-generated suggestions

  bool operator==(const RemediationStep&) const = default;
};

// Builders for well-formed steps.
RemediationStep make_step(StepKind kind, StepParams params, std::string rationale = {});

// Parses {"kind", "params", "rationale", "actor"?} and validates the params
// against the kind. Throws UnknownStepKind, MissingParameter or
// InvalidParameterValue.
RemediationStep step_from_json(const nlohmann::json& j);
nlohmann::json step_to_json(const RemediationStep& step);
nlohmann::json params_to_json(const RemediationStep& step);

void to_json(nlohmann::json& j, const Actor& actor);
void from_json(const nlohmann::json& j, Actor& actor);
void to_json(nlohmann::json& j, Persona persona);
void from_json(const nlohmann::json& j, Persona& persona);

// Human-readable one-liner, e.g. "impute(column=age, strategy=median)".
std::string describe_step(const RemediationStep& step);

}  // namespace readiness
