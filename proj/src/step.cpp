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

#include "readiness/step.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "readiness/dataset.hpp"
#include "readiness/error.hpp"

namespace readiness {

namespace {

using nlohmann::json;

constexpr std::pair<Persona, std::string_view> kPersonaNames[] = {
    {Persona::kDataSteward, "data_steward"},
    {Persona::kSubjectMatterExpert, "subject_matter_expert"},
    {Persona::kDataScientist, "data_scientist"},
    {Persona::kMlEngineer, "ml_engineer"},
    {Persona::kDataGovernanceOfficer, "data_governance_officer"},
    {Persona::kOther, "other"},
};

constexpr std::pair<StepKind, std::string_view> kStepNames[] = {
    {StepKind::kImpute, "impute"},
    {StepKind::kDropRowsMissing, "drop_rows_missing"},
    {StepKind::kDropColumn, "drop_column"},
    {StepKind::kCapOutliers, "cap_outliers"},
    {StepKind::kDropOutlierRows, "drop_outlier_rows"},
    {StepKind::kOversample, "oversample"},
    {StepKind::kUndersample, "undersample"},
    {StepKind::kDedupe, "dedupe"},
    {StepKind::kNormalizeValues, "normalize_values"},
    {StepKind::kDropFlaggedLabels, "drop_flagged_labels"},
};

constexpr std::pair<ImputeStrategy, std::string_view> kStrategyNames[] = {
    {ImputeStrategy::kMean, "mean"},
    {ImputeStrategy::kMedian, "median"},
    {ImputeStrategy::kMode, "mode"},
    {ImputeStrategy::kConstant, "constant"},
};

std::string_view to_string(ImputeStrategy s) {
  for (auto [value, name] : kStrategyNames) {
    if (value == s) return name;
  }
  return "median";
}

// Reads parameters of one step and reports precise errors.
class ParamReader {
 public:
  ParamReader(StepKind kind, const json& params) : kind_(kind), params_(params) {
    if (!params_.is_object()) {
      throw Error(ErrorCode::kPlanSyntaxError,
                  std::string(to_string(kind_)) + ": params must be a mapping");
    }
  }

  bool has(const char* key) const {
    auto it = params_.find(key);
    return it != params_.end() && !it->is_null();
  }

  std::string text(const char* key) {
    return scalar_text(require(key), key);
  }

  std::optional<std::string> optional_text(const char* key) {
    if (!has(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return text(key);
  }

  double number(const char* key) {
    const json& v = require(key);
    if (!v.is_number()) invalid(key, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(key, "must be finite");
    return d;
  }

  std::uint64_t unsigned_integer(const char* key) {
    const json& v = require(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    invalid(key, "must be a non-negative integer");
  }

  // A single string or a list of strings.
  std::vector<std::string> text_list(const char* key) {
    const json& v = require(key);
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const json& item : v) out.push_back(scalar_text(item, key));
    } else {
      out.push_back(scalar_text(v, key));
    }
    return out;
  }

  const json& raw(const char* key) { return require(key); }

  // Rejects keys the kind does not define.
  void finish() const {
    for (const auto& [key, value] : params_.items()) {
      if (!seen_.contains(key)) {
        throw Error(ErrorCode::kInvalidParameterValue, std::string(to_string(kind_)) +
                                                           ": unknown parameter '" + key + "'");
      }
    }
  }

  void mark(const char* key) { seen_.insert(key); }

  [[noreturn]] void invalid(const std::string& key, const std::string& what) const {
    throw Error(ErrorCode::kInvalidParameterValue,
                std::string(to_string(kind_)) + ": parameter '" + key + "' " + what);
  }

 private:
  const json& require(const char* key) {
    seen_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end() || it->is_null()) {
      throw Error(ErrorCode::kMissingParameter,
                  std::string(to_string(kind_)) + ": missing parameter '" + key + "'");
    }
    return *it;
  }

  std::string scalar_text(const json& v, const std::string& key) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    invalid(key, "must be a scalar");
  }

  StepKind kind_;
  const json& params_;
  std::set<std::string> seen_;
};

StepParams read_params(StepKind kind, const json& params) {
  ParamReader r(kind, params);
  StepParams out;
  switch (kind) {
    case StepKind::kImpute: {
      ImputeParams p;
      p.column = r.text("column");
      const std::string strategy = r.text("strategy");
      bool known = false;
      for (auto [value, name] : kStrategyNames) {
        if (name == strategy) {
          p.strategy = value;
          known = true;
        }
      }
      if (!known) r.invalid("strategy", "must be one of mean, median, mode, constant");
      if (p.strategy == ImputeStrategy::kConstant) {
        p.value = r.text("value");
      } else {
        r.mark("value");
        if (r.has("value")) r.invalid("value", "is only valid with strategy 'constant'");
      }
      out = p;
      break;
    }
    case StepKind::kDropRowsMissing: {
      DropRowsMissingParams p;
      const json& columns = r.raw("columns");
      if (!(columns.is_string() && columns.get<std::string>() == "any")) {
        p.columns = r.text_list("columns");
        if (p.columns.empty()) r.invalid("columns", "must name at least one column or be 'any'");
      }
      out = p;
      break;
    }
    case StepKind::kDropColumn:
      out = DropColumnParams{r.text("column")};
      break;
    case StepKind::kCapOutliers:
    case StepKind::kDropOutlierRows: {
      OutlierParams p;
      if (r.has("columns")) p.columns = r.text_list("columns");
      r.mark("columns");
      if (r.has("column")) {
        auto single = r.text("column");
        p.columns.push_back(single);
      }
      r.mark("column");
      if (r.has("iqr_multiplier")) {
        p.iqr_multiplier = r.number("iqr_multiplier");
        if (!(p.iqr_multiplier > 0)) r.invalid("iqr_multiplier", "must be positive");
      }
      r.mark("iqr_multiplier");
      out = p;
      break;
    }
    case StepKind::kOversample:
    case StepKind::kUndersample: {
      SamplingParams p;
      p.target_ratio = r.number("target_ratio");
      if (!(p.target_ratio > 0 && p.target_ratio <= 1)) {
        r.invalid("target_ratio", "must lie in (0, 1]");
      }
      p.seed = r.unsigned_integer("seed");
      p.column = r.optional_text("column");
      out = p;
      break;
    }
    case StepKind::kDedupe:
      out = DedupeParams{};
      break;
    case StepKind::kNormalizeValues: {
      NormalizeParams p;
      p.column = r.text("column");
      const json& transforms = r.raw("transforms");
      if (!transforms.is_array() || transforms.empty()) {
        r.invalid("transforms", "must be a non-empty list");
      }
      for (const json& t : transforms) {
        NormalizeTransform transform;
        if (t.is_string() && t.get<std::string>() == "trim") {
          transform.kind = NormalizeTransform::Kind::kTrim;
        } else if (t.is_string() && t.get<std::string>() == "lowercase") {
          transform.kind = NormalizeTransform::Kind::kLowercase;
        } else if (t.is_object() && t.size() == 1 && t.contains("map") && t["map"].is_object()) {
          transform.kind = NormalizeTransform::Kind::kMap;
          for (const auto& [from, to] : t["map"].items()) {
            if (to.is_string()) {
              transform.mapping[from] = to.get<std::string>();
            } else if (to.is_null()) {
              transform.mapping[from] = "";
            } else if (to.is_number() || to.is_boolean()) {
              transform.mapping[from] = to.is_number_float() ? format_real(to.get<double>())
                                                             : to.dump();
            } else {
              r.invalid("transforms", "map values must be scalars");
            }
          }
        } else {
          r.invalid("transforms", "entries must be 'trim', 'lowercase' or {map: {...}}");
        }
        p.transforms.push_back(std::move(transform));
      }
      out = p;
      break;
    }
    case StepKind::kDropFlaggedLabels: {
      DropFlaggedLabelsParams p;
      p.threshold = r.number("threshold");
      if (!(p.threshold >= 0 && p.threshold <= 1)) r.invalid("threshold", "must lie in [0, 1]");
      const std::uint64_t k = r.unsigned_integer("k");
      if (k < 1) r.invalid("k", "must be at least 1");
      p.k = static_cast<std::size_t>(k);
      out = p;
      break;
    }
  }
  r.finish();
  return out;
}

}  // namespace

std::string_view to_string(Persona persona) {
  for (auto [value, name] : kPersonaNames) {
    if (value == persona) return name;
  }
  return "other";
}

Persona persona_from_string(std::string_view text) {
  for (auto [value, name] : kPersonaNames) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::kInvalidParameterValue, "unknown persona '" + std::string(text) + "'");
}

std::string_view to_string(StepKind kind) {
  for (auto [value, name] : kStepNames) {
    if (value == kind) return name;
  }
  return "dedupe";
}

StepKind step_kind_from_string(std::string_view text) {
  for (auto [value, name] : kStepNames) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::kUnknownStepKind, "unknown step kind '" + std::string(text) + "'");
}

RemediationStep make_step(StepKind kind, StepParams params, std::string rationale) {
  RemediationStep step;
  step.kind = kind;
  step.params = std::move(params);
  step.rationale = std::move(rationale);
  return step;
}

void to_json(nlohmann::json& j, Persona persona) { j = std::string(to_string(persona)); }
void from_json(const nlohmann::json& j, Persona& persona) {
  persona = persona_from_string(j.get<std::string>());
}

void to_json(nlohmann::json& j, const Actor& actor) {
  j = {{"name", actor.name}, {"persona", actor.persona}};
}

void from_json(const nlohmann::json& j, Actor& actor) {
  j.at("name").get_to(actor.name);
  j.at("persona").get_to(actor.persona);
  if (actor.name.empty()) {
    throw Error(ErrorCode::kInvalidParameterValue, "actor name must be non-empty");
  }
}

nlohmann::json params_to_json(const RemediationStep& step) {
  struct Visitor {
    json operator()(const ImputeParams& p) const {
      json j = {{"column", p.column}, {"strategy", std::string(to_string(p.strategy))}};
      if (p.value) j["value"] = *p.value;
      return j;
    }
    json operator()(const DropRowsMissingParams& p) const {
      if (p.columns.empty()) return {{"columns", "any"}};
      return {{"columns", p.columns}};
    }
    json operator()(const DropColumnParams& p) const { return {{"column", p.column}}; }
    json operator()(const OutlierParams& p) const {
      return {{"columns", p.columns}, {"iqr_multiplier", p.iqr_multiplier}};
    }
    json operator()(const SamplingParams& p) const {
      json j = {{"target_ratio", p.target_ratio}, {"seed", p.seed}};
      if (p.column) j["column"] = *p.column;
      return j;
    }
    json operator()(const DedupeParams&) const { return json::object(); }
    json operator()(const NormalizeParams& p) const {
      json transforms = json::array();
      for (const NormalizeTransform& t : p.transforms) {
        switch (t.kind) {
          case NormalizeTransform::Kind::kTrim: transforms.push_back("trim"); break;
          case NormalizeTransform::Kind::kLowercase: transforms.push_back("lowercase"); break;
          case NormalizeTransform::Kind::kMap: transforms.push_back({{"map", t.mapping}}); break;
        }
      }
      return {{"column", p.column}, {"transforms", transforms}};
    }
    json operator()(const DropFlaggedLabelsParams& p) const {
      return {{"threshold", p.threshold}, {"k", p.k}};
    }
  };
  return std::visit(Visitor{}, step.params);
}

nlohmann::json step_to_json(const RemediationStep& step) {
  json j = {{"kind", std::string(to_string(step.kind))},
            {"params", params_to_json(step)},
            {"rationale", step.rationale}};
  if (step.actor) j["actor"] = *step.actor;
  return j;
}

RemediationStep step_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kPlanSyntaxError, "step must be a mapping");
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) {
    throw Error(ErrorCode::kMissingParameter, "step is missing 'kind'");
  }
  RemediationStep step;
  step.kind = step_kind_from_string(kind_it->get<std::string>());
  static const json kEmpty = json::object();
  auto params_it = j.find("params");
  step.params = read_params(step.kind,
                            params_it == j.end() || params_it->is_null() ? kEmpty : *params_it);
  if (auto it = j.find("rationale"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::kPlanSyntaxError, "rationale must be text");
    step.rationale = it->get<std::string>();
  }
  if (auto it = j.find("actor"); it != j.end() && !it->is_null()) {
    step.actor = it->get<Actor>();
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "params" && key != "rationale" && key != "actor") {
      throw Error(ErrorCode::kPlanSyntaxError, "unknown step field '" + key + "'");
    }
  }
  return step;
}

std::string describe_step(const RemediationStep& step) {
  std::ostringstream out;
  out << to_string(step.kind) << "(";
  bool first = true;
  const json params = params_to_json(step);
  for (const auto& [key, value] : params.items()) {
    if (!first) out << ", ";
    first = false;
    out << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
  }
  out << ")";
  return out.str();
}

}  // namespace readiness
