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

#include "readiness/remediation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "readiness/clock.hpp"
#include "readiness/error.hpp"
#include "readiness/json_io.hpp"
#include "readiness/knn.hpp"
#include "readiness/quality.hpp"
#include "readiness/stats.hpp"
#include "readiness/yaml_io.hpp"

namespace readiness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

Dataset rebuild(const Dataset& source, std::vector<Column> columns) {
  for (Column& column : columns) refresh_type_stats(column);
  return Dataset(std::move(columns), source.source_path(), source.version_label(), source.warnings());
}

Dataset select_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
  std::vector<Column> columns;
  columns.reserve(dataset.column_count());
  for (const Column& source : dataset.columns()) {
    Column column = source;
    column.cells.clear();
    column.cells.reserve(rows.size());
    for (std::size_t r : rows) column.cells.push_back(source.cells[r]);
    columns.push_back(std::move(column));
  }
  return rebuild(dataset, std::move(columns));
}

std::vector<std::size_t> rows_except(std::size_t row_count, const std::vector<bool>& removed) {
  std::vector<std::size_t> keep;
  keep.reserve(row_count);
  for (std::size_t r = 0; r < row_count; ++r) {
    if (!removed[r]) keep.push_back(r);
  }
  return keep;
}

std::vector<double> numeric_values(const Column& column) {
  std::vector<double> values;
  for (const Cell& cell : column.cells) {
    if (auto v = numeric_value(cell)) values.push_back(*v);
  }
  return values;
}

Cell numeric_cell(double value, ValueType base_type) {
  if (base_type == ValueType::kInteger) return static_cast<std::int64_t>(std::llround(value));
  return value;
}

const Column& require_numeric(const Dataset& dataset, const std::string& name, StepKind kind) {
  const Column& column = dataset.column(dataset.column_index(name));
  if (!column.is_numeric()) {
    fail(ErrorCode::kTypeMismatch, std::string(to_string(kind)) + " requires a numeric column; '" +
                                       name + "' is " + std::string(to_string(column.declared_type())));
  }
  return column;
}

std::size_t count_changes(const Column& before, const Column& after) {
  std::size_t changed = 0;
  for (std::size_t r = 0; r < before.cells.size(); ++r) {
    if (before.cells[r] != after.cells[r]) ++changed;
  }
  return changed;
}

struct Outcome {
  Dataset dataset;
  std::size_t cells_modified = 0;
};

Outcome impute(const Dataset& dataset, const ImputeParams& p) {
  const std::size_t index = dataset.column_index(p.column);
  const Column& column = dataset.column(index);
  Cell fill;
  switch (p.strategy) {
    case ImputeStrategy::kMean:
    case ImputeStrategy::kMedian: {
      require_numeric(dataset, p.column, StepKind::kImpute);
      std::vector<double> values = numeric_values(column);
      if (values.empty()) {
        fail(ErrorCode::kNotApplicable, "column '" + p.column + "' has no numeric values to impute from");
      }
      double statistic = 0;
      if (p.strategy == ImputeStrategy::kMean) {
        long double sum = 0;
        for (double v : values) sum += v;
        statistic = static_cast<double>(sum / static_cast<long double>(values.size()));
      } else {
        std::sort(values.begin(), values.end());
        statistic = stats::quantile_sorted(values, 0.5);
      }
      fill = numeric_cell(statistic, column.base_type);
      break;
    }
    case ImputeStrategy::kMode: {
      std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // token -> count, first row
      for (std::size_t r = 0; r < column.cells.size(); ++r) {
        if (is_missing(column.cells[r])) continue;
        auto [it, inserted] = counts.try_emplace(cell_token(column.cells[r]), 0, r);
        it->second.first += 1;
      }
      if (counts.empty()) {
        fail(ErrorCode::kNotApplicable, "column '" + p.column + "' has no values to take a mode from");
      }
      auto best = counts.begin();
      for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second.first > best->second.first) best = it;
      }
      fill = column.cells[best->second.second];
      break;
    }
    case ImputeStrategy::kConstant: {
      if (!p.value || p.value->empty()) {
        fail(ErrorCode::kInvalidParameterValue, "constant imputation needs a non-empty value");
      }
      fill = parse_cell(*p.value, column.base_type);
      if (is_missing(fill) ||
          (column.base_type != ValueType::kText && std::holds_alternative<std::string>(fill))) {
        fail(ErrorCode::kTypeMismatch, "value '" + *p.value + "' is not a valid " +
                                           std::string(to_string(column.base_type)) + " for '" +
                                           p.column + "'");
      }
      break;
    }
  }
  std::vector<Column> columns = dataset.columns();
  std::size_t modified = 0;
  for (Cell& cell : columns[index].cells) {
    if (is_missing(cell)) {
      cell = fill;
      ++modified;
    }
  }
  return {rebuild(dataset, std::move(columns)), modified};
}

Outcome drop_rows_missing(const Dataset& dataset, const DropRowsMissingParams& p) {
  std::vector<std::size_t> indices;
  if (p.columns.empty()) {
    for (std::size_t c = 0; c < dataset.column_count(); ++c) indices.push_back(c);
  } else {
    for (const std::string& name : p.columns) indices.push_back(dataset.column_index(name));
  }
  std::vector<bool> removed(dataset.row_count(), false);
  for (std::size_t c : indices) {
    const Column& column = dataset.column(c);
    for (std::size_t r = 0; r < column.cells.size(); ++r) {
      if (is_missing(column.cells[r])) removed[r] = true;
    }
  }
  return {select_rows(dataset, rows_except(dataset.row_count(), removed)), 0};
}

Outcome drop_column(const Dataset& dataset, const DropColumnParams& p) {
  const std::size_t index = dataset.column_index(p.column);
  if (dataset.column_count() == 1) {
    fail(ErrorCode::kInvalidParameterValue, "cannot drop '" + p.column + "', the only column");
  }
  std::vector<Column> columns = dataset.columns();
  columns.erase(columns.begin() + static_cast<std::ptrdiff_t>(index));
  return {Dataset(std::move(columns), dataset.source_path(), dataset.version_label(), dataset.warnings()), 0};
}

std::vector<std::size_t> outlier_columns(const Dataset& dataset, const OutlierParams& p, StepKind kind) {
  std::vector<std::size_t> indices;
  if (p.columns.empty()) return numeric_feature_columns(dataset);
  for (const std::string& name : p.columns) {
    require_numeric(dataset, name, kind);
    indices.push_back(dataset.column_index(name));
  }
  return indices;
}

Outcome cap_outliers(const Dataset& dataset, const OutlierParams& p) {
  std::vector<Column> columns = dataset.columns();
  std::size_t modified = 0;
  for (std::size_t c : outlier_columns(dataset, p, StepKind::kCapOutliers)) {
    auto outliers = find_outliers(dataset.column(c), p.iqr_multiplier);
    if (!outliers) continue;
    Column& column = columns[c];
    const bool integral = column.base_type == ValueType::kInteger;
    const double lower = integral ? std::ceil(outliers->lower_fence) : outliers->lower_fence;
    const double upper = integral ? std::floor(outliers->upper_fence) : outliers->upper_fence;
    for (std::size_t r : outliers->rows) {
      const double v = *numeric_value(column.cells[r]);
      column.cells[r] = numeric_cell(v < outliers->lower_fence ? lower : upper, column.base_type);
      ++modified;
    }
  }
  return {rebuild(dataset, std::move(columns)), modified};
}

Outcome drop_outlier_rows(const Dataset& dataset, const OutlierParams& p) {
  std::vector<bool> removed(dataset.row_count(), false);
  for (std::size_t c : outlier_columns(dataset, p, StepKind::kDropOutlierRows)) {
    auto outliers = find_outliers(dataset.column(c), p.iqr_multiplier);
    if (!outliers) continue;
    for (std::size_t r : outliers->rows) removed[r] = true;
  }
  return {select_rows(dataset, rows_except(dataset.row_count(), removed)), 0};
}

struct ClassRows {
  std::string label;
  std::vector<std::size_t> rows;
};

// Classes of the sampling column in order of first appearance.
std::vector<ClassRows> class_rows(const Dataset& dataset, const SamplingParams& p, StepKind kind) {
  std::size_t index = 0;
  if (p.column) {
    index = dataset.column_index(*p.column);
  } else if (auto target = dataset.first_with_role(Role::kTarget)) {
    index = *target;
  } else {
    fail(ErrorCode::kNotApplicable,
         std::string(to_string(kind)) + " needs a target column or an explicit 'column'");
  }
  const Column& column = dataset.column(index);
  if (column.base_type == ValueType::kReal && !column.categorical) {
    fail(ErrorCode::kTypeMismatch, std::string(to_string(kind)) + " needs a categorical column; '" +
                                       column.name + "' is real-valued");
  }
  std::vector<ClassRows> classes;
  std::map<std::string, std::size_t> position;
  for (std::size_t r = 0; r < column.cells.size(); ++r) {
    if (is_missing(column.cells[r])) continue;
    std::string token = cell_token(column.cells[r]);
    auto [it, inserted] = position.try_emplace(token, classes.size());
    if (inserted) classes.push_back({std::move(token), {}});
    classes[it->second].rows.push_back(r);
  }
  return classes;
}

Outcome oversample(const Dataset& dataset, const SamplingParams& p) {
  const auto classes = class_rows(dataset, p, StepKind::kOversample);
  if (classes.empty()) return {dataset, 0};
  std::size_t max = 0;
  for (const ClassRows& c : classes) max = std::max(max, c.rows.size());
  // Smallest count t with t / max >= ratio.
  auto target = static_cast<std::size_t>(std::ceil(p.target_ratio * static_cast<double>(max)));
  while (target > 0 && static_cast<double>(target - 1) / static_cast<double>(max) >= p.target_ratio) --target;
  while (static_cast<double>(target) / static_cast<double>(max) < p.target_ratio) ++target;
  std::mt19937_64 engine(p.seed);
  std::vector<std::size_t> rows(dataset.row_count());
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
  for (const ClassRows& c : classes) {
    for (std::size_t n = c.rows.size(); n < target; ++n) {
      rows.push_back(c.rows[uniform_below(engine, c.rows.size())]);
    }
  }
  return {select_rows(dataset, rows), 0};
}

Outcome undersample(const Dataset& dataset, const SamplingParams& p) {
  const auto classes = class_rows(dataset, p, StepKind::kUndersample);
  if (classes.empty()) return {dataset, 0};
  std::size_t min = std::numeric_limits<std::size_t>::max();
  for (const ClassRows& c : classes) min = std::min(min, c.rows.size());
  // Largest count u with min / u >= ratio.
  auto keep = static_cast<std::size_t>(std::floor(static_cast<double>(min) / p.target_ratio));
  while (keep > min && static_cast<double>(min) / static_cast<double>(keep) < p.target_ratio) --keep;
  while (static_cast<double>(min) / static_cast<double>(keep + 1) >= p.target_ratio) ++keep;
  std::mt19937_64 engine(p.seed);
  std::vector<bool> removed(dataset.row_count(), false);
  for (const ClassRows& c : classes) {
    if (c.rows.size() <= keep) continue;
    std::vector<std::size_t> pool = c.rows;
    const std::size_t drop = pool.size() - keep;
    for (std::size_t i = 0; i < drop; ++i) {
      const std::size_t j = i + uniform_below(engine, pool.size() - i);
      std::swap(pool[i], pool[j]);
      removed[pool[i]] = true;
    }
  }
  return {select_rows(dataset, rows_except(dataset.row_count(), removed)), 0};
}

Outcome dedupe(const Dataset& dataset) {
  std::vector<bool> removed(dataset.row_count(), false);
  for (std::size_t r : duplicate_rows(dataset)) removed[r] = true;
  return {select_rows(dataset, rows_except(dataset.row_count(), removed)), 0};
}

std::string apply_transform(std::string token, const NormalizeTransform& t) {
  switch (t.kind) {
    case NormalizeTransform::Kind::kTrim: {
      const auto first = token.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) return {};
      const auto last = token.find_last_not_of(" \t\r\n");
      return token.substr(first, last - first + 1);
    }
    case NormalizeTransform::Kind::kLowercase:
      for (char& ch : token) {
        if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      }
      return token;
    case NormalizeTransform::Kind::kMap:
      if (auto it = t.mapping.find(token); it != t.mapping.end()) return it->second;
      return token;
  }
  return token;
}

Outcome normalize_values(const Dataset& dataset, const NormalizeParams& p) {
  const std::size_t index = dataset.column_index(p.column);
  const Column& source = dataset.column(index);
  if (source.base_type != ValueType::kText && !source.categorical && source.type_violation_count == 0) {
    fail(ErrorCode::kTypeMismatch, "normalize_values requires a text or categorical column, or one "
                                   "with type violations; '" + p.column + "' is " +
                                   std::string(to_string(source.declared_type())));
  }
  std::vector<Column> columns = dataset.columns();
  Column& column = columns[index];
  for (Cell& cell : column.cells) {
    if (is_missing(cell)) continue;
    std::string token = cell_token(cell);
    for (const NormalizeTransform& t : p.transforms) token = apply_transform(std::move(token), t);
    cell = token.empty() ? Cell{Missing{}} : parse_cell(token, column.base_type);
  }
  const std::size_t modified = count_changes(source, column);
  return {rebuild(dataset, std::move(columns)), modified};
}

Outcome drop_flagged_labels(const Dataset& dataset, const DropFlaggedLabelsParams& p) {
  const KdnResult kdn = compute_kdn(dataset, p.k);
  if (!kdn.applicable) fail(ErrorCode::kNotApplicable, "drop_flagged_labels: " + kdn.reason);
  std::vector<bool> removed(dataset.row_count(), false);
  for (std::size_t r = 0; r < kdn.kdn.size(); ++r) {
    if (kdn.kdn[r] && *kdn.kdn[r] > p.threshold) removed[r] = true;
  }
  return {select_rows(dataset, rows_except(dataset.row_count(), removed)), 0};
}

Outcome dispatch(const Dataset& dataset, const RemediationStep& step) {
  switch (step.kind) {
    case StepKind::kImpute: return impute(dataset, std::get<ImputeParams>(step.params));
    case StepKind::kDropRowsMissing:
      return drop_rows_missing(dataset, std::get<DropRowsMissingParams>(step.params));
    case StepKind::kDropColumn: return drop_column(dataset, std::get<DropColumnParams>(step.params));
    case StepKind::kCapOutliers: return cap_outliers(dataset, std::get<OutlierParams>(step.params));
    case StepKind::kDropOutlierRows:
      return drop_outlier_rows(dataset, std::get<OutlierParams>(step.params));
    case StepKind::kOversample: return oversample(dataset, std::get<SamplingParams>(step.params));
    case StepKind::kUndersample: return undersample(dataset, std::get<SamplingParams>(step.params));
    case StepKind::kDedupe: return dedupe(dataset);
    case StepKind::kNormalizeValues:
      return normalize_values(dataset, std::get<NormalizeParams>(step.params));
    case StepKind::kDropFlaggedLabels:
      return drop_flagged_labels(dataset, std::get<DropFlaggedLabelsParams>(step.params));
  }
  fail(ErrorCode::kUnknownStepKind, "unhandled step kind");
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(ErrorCode::kPlanSyntaxError, std::string("unknown ") + where + " field '" + key + "'");
    }
  }
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::kInvalidParameterValue, "uniform_below needs a positive bound");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine();
  while (draw >= limit) draw = engine();
  return draw % bound;
}

StepResult apply_step(const Dataset& dataset, const RemediationStep& step, std::size_t step_index) {
  Outcome outcome = dispatch(dataset, step);
  ChangeSummary summary;
  summary.step_index = step_index;
  summary.kind = step.kind;
  summary.rows_before = dataset.row_count();
  summary.rows_after = outcome.dataset.row_count();
  summary.columns_before = dataset.column_count();
  summary.columns_after = outcome.dataset.column_count();
  summary.cells_modified = outcome.cells_modified;
  summary.input_digest = dataset.digest();
  summary.output_digest = outcome.dataset.digest();
  return {std::move(outcome.dataset), summary};
}

PlanResult apply_plan(const Dataset& dataset, const RemediationPlan& plan, LineageLedger* ledger,
                      const Actor& invoker) {
  if (plan.steps.empty()) fail(ErrorCode::kPlanSyntaxError, "plan has no steps");
  PlanResult result{dataset, {}};
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const RemediationStep& step = plan.steps[i];
    try {
      StepResult applied = apply_step(result.dataset, step, i + 1);
      if (ledger) {
        json detail = {{"plan_id", plan.plan_id},
                       {"step", step_to_json(step)},
                       {"change", applied.summary}};
        const Actor& actor = step.actor ? *step.actor : plan.actor ? *plan.actor : invoker;
        ledger->append(actor, Operation::kRemediationStep, std::move(detail),
                       applied.summary.input_digest, applied.summary.output_digest);
      }
      result.changes.push_back(applied.summary);
      result.dataset = std::move(applied.dataset);
    } catch (const Error& e) {
      throw e.with_step_index(i + 1);
    }
  }
  return result;
}

RemediationPlan plan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::kPlanSyntaxError, "plan must be a mapping");
  check_keys(j, {"plan_id", "actor", "created_at", "steps"}, "plan");
  RemediationPlan plan;
  auto id = j.find("plan_id");
  if (id == j.end() || id->is_null()) fail(ErrorCode::kMissingParameter, "plan is missing 'plan_id'");
  if (!id->is_string() || id->get<std::string>().empty()) {
    fail(ErrorCode::kInvalidParameterValue, "plan_id must be non-empty text");
  }
  plan.plan_id = id->get<std::string>();
  if (auto a = j.find("actor"); a != j.end() && !a->is_null()) {
    if (!a->is_object()) fail(ErrorCode::kPlanSyntaxError, "plan actor must be a mapping");
    plan.actor = a->get<Actor>();
  }
  if (auto c = j.find("created_at"); c != j.end() && !c->is_null()) {
    if (!c->is_string()) fail(ErrorCode::kPlanSyntaxError, "created_at must be text");
    plan.created_at = c->get<std::string>();
  } else {
    plan.created_at = utc_now();
  }
  auto steps = j.find("steps");
  if (steps == j.end() || steps->is_null()) fail(ErrorCode::kMissingParameter, "plan is missing 'steps'");
  if (!steps->is_array()) fail(ErrorCode::kPlanSyntaxError, "'steps' must be a list");
  if (steps->empty()) fail(ErrorCode::kPlanSyntaxError, "plan has no steps");
  for (std::size_t i = 0; i < steps->size(); ++i) {
    try {
      plan.steps.push_back(step_from_json((*steps)[i]));
    } catch (const Error& e) {
      throw e.with_step_index(i + 1);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kPlanSyntaxError, e.what()).with_step_index(i + 1);
    }
  }
  return plan;
}

RemediationPlan parse_plan(std::string_view text) {
  const json j = yaml_to_json(text, ErrorCode::kPlanSyntaxError, "plan");
  try {
    return plan_from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kPlanSyntaxError, e.what());
  }
}

nlohmann::json plan_to_json(const RemediationPlan& plan) {
  json steps = json::array();
  for (const RemediationStep& step : plan.steps) steps.push_back(step_to_json(step));
  json j = {{"plan_id", plan.plan_id}, {"created_at", plan.created_at}, {"steps", steps}};
  j["actor"] = plan.actor ? json(*plan.actor) : json(nullptr);
  return j;
}

RemediationPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kFileNotFound, "cannot open plan '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_plan(buffer.str());
}

void override_seeds(RemediationPlan& plan, std::uint64_t seed) {
  for (RemediationStep& step : plan.steps) {
    if (auto* p = std::get_if<SamplingParams>(&step.params)) p->seed = seed;
  }
}

void to_json(nlohmann::json& j, const ChangeSummary& v) {
  j = {{"step_index", v.step_index},
       {"kind", std::string(to_string(v.kind))},
       {"rows_before", v.rows_before},
       {"rows_after", v.rows_after},
       {"columns_before", v.columns_before},
       {"columns_after", v.columns_after},
       {"cells_modified", v.cells_modified},
       {"input_digest", v.input_digest},
       {"output_digest", v.output_digest}};
}

void from_json(const nlohmann::json& j, ChangeSummary& v) {
  j.at("step_index").get_to(v.step_index);
  v.kind = step_kind_from_string(j.at("kind").get<std::string>());
  j.at("rows_before").get_to(v.rows_before);
  j.at("rows_after").get_to(v.rows_after);
  j.at("columns_before").get_to(v.columns_before);
  j.at("columns_after").get_to(v.columns_after);
  j.at("cells_modified").get_to(v.cells_modified);
  j.at("input_digest").get_to(v.input_digest);
  j.at("output_digest").get_to(v.output_digest);
}

}  // namespace readiness
