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
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "readiness/dataset.hpp"
#include "readiness/lineage.hpp"
#include "readiness/step.hpp"

namespace readiness {

struct RemediationPlan {
  std::string plan_id;
  std::optional<Actor> actor;  // default actor for steps that name none
  std::vector<RemediationStep> steps;
  std::string created_at;

  bool operator==(const RemediationPlan&) const = default;
};

// Parses a YAML plan document:
//   plan_id: ...            actor: {name, persona}      created_at: optional
//   steps: [{kind, params, rationale, actor?}, ...]
// Throws PlanSyntaxError, UnknownStepKind, MissingParameter or
// InvalidParameterValue. Step errors carry the 1-based step index.
RemediationPlan parse_plan(std::string_view text);
RemediationPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const RemediationPlan& plan);
// Throws FileNotFound plus the parse_plan errors.
RemediationPlan load_plan(const std::filesystem::path& path);

// Replaces the seed of every sampling step.
void override_seeds(RemediationPlan& plan, std::uint64_t seed);

struct ChangeSummary {
  std::size_t step_index = 0;  // 1-based position in the plan
  StepKind kind = StepKind::kDedupe;
  std::size_t rows_before = 0;
  std::size_t rows_after = 0;
  std::size_t columns_before = 0;
  std::size_t columns_after = 0;
  // Cells whose value changed in rows and columns present before and after.
  std::size_t cells_modified = 0;
  Digest input_digest;
  Digest output_digest;

  bool operator==(const ChangeSummary&) const = default;
};

void to_json(nlohmann::json& j, const ChangeSummary& v);
void from_json(const nlohmann::json& j, ChangeSummary& v);

struct StepResult {
  Dataset dataset;
  ChangeSummary summary;
};

// Throws ColumnNotFound, TypeMismatch, NotApplicable or InvalidParameterValue.
StepResult apply_step(const Dataset& dataset, const RemediationStep& step,
                      std::size_t step_index = 1);

struct PlanResult {
  Dataset dataset;
  std::vector<ChangeSummary> changes;
};

// Applies the steps in order. With a ledger, each successful step appends one
// remediation_step entry; a failing step appends nothing and its error names
// the step index. Entries are attributed to the step's actor, else the plan's,
// else `invoker`.
PlanResult apply_plan(const Dataset& dataset, const RemediationPlan& plan,
                      LineageLedger* ledger = nullptr, const Actor& invoker = {"unknown", Persona::kOther});

// Uniform integer in [0, bound) from a 64-bit engine, identical on every
// platform. bound must be positive.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

}  // namespace readiness
