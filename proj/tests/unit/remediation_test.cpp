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

#include <doctest.h>

#include <map>
#include <random>

#include "readiness/error.hpp"
#include "readiness/lineage.hpp"
#include "readiness/quality.hpp"
#include "readiness/remediation.hpp"
#include "support.hpp"

using namespace readiness;
using readiness::testing::csv;

namespace {

Dataset ninety_ten() {
  std::string text = "x,y\n";
  for (int i = 0; i < 90; ++i) text += std::to_string(i) + ",no\n";
  for (int i = 0; i < 10; ++i) text += std::to_string(100 + i) + ",yes\n";
  return csv(text, {{"y", Role::kTarget}});
}

std::map<std::string, std::size_t> label_counts(const Dataset& d, std::string_view column) {
  std::map<std::string, std::size_t> counts;
  for (const Cell& c : d.column(d.column_index(column)).cells) counts[cell_token(c)] += 1;
  return counts;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIoError;
}

RemediationStep step(std::string_view yaml_step) {
  return parse_plan("plan_id: t\nsteps:\n  - " + std::string(yaml_step) + "\n").steps.at(0);
}

}  // namespace

TEST_SUITE("remediation") {

TEST_CASE("median and mean imputation of {1,2,3,missing} fill 2") {
  const Dataset d = csv("v\n1\n2\n3\n?\n");
  for (auto strategy : {ImputeStrategy::kMedian, ImputeStrategy::kMean}) {
    const StepResult r = apply_step(d, make_step(StepKind::kImpute, ImputeParams{"v", strategy, {}}));
    CHECK(std::get<std::int64_t>(r.dataset.column(0).cells[3]) == 2);
    CHECK(r.dataset.column(0).missing_count() == 0);
    CHECK(r.summary.cells_modified == 1);
    CHECK(r.summary.input_digest == d.digest());
    CHECK(r.summary.output_digest == r.dataset.digest());
  }
}

TEST_CASE("mode imputation breaks ties toward the smallest token") {
  const Dataset d = csv("c\nb\na\nb\na\n?\n");
  const StepResult r = apply_step(d, make_step(StepKind::kImpute, ImputeParams{"c", ImputeStrategy::kMode, {}}));
  CHECK(std::get<std::string>(r.dataset.column(0).cells[4]) == "a");
}

TEST_CASE("constant imputation must match the column type") {
  const Dataset d = csv("v\n1\n?\n");
  const StepResult ok = apply_step(d, make_step(StepKind::kImpute, ImputeParams{"v", ImputeStrategy::kConstant, "0"}));
  CHECK(std::get<std::int64_t>(ok.dataset.column(0).cells[1]) == 0);
  CHECK(code_of([&] {
          apply_step(d, make_step(StepKind::kImpute, ImputeParams{"v", ImputeStrategy::kConstant, "zero"}));
        }) == ErrorCode::kTypeMismatch);
}

TEST_CASE("oversampling 90/10 to parity yields 180 rows deterministically") {
  const Dataset d = ninety_ten();
  const RemediationStep s = make_step(StepKind::kOversample, SamplingParams{1.0, 42, std::nullopt});
  const StepResult a = apply_step(d, s);
  const StepResult b = apply_step(d, s);
  CHECK(a.dataset.row_count() == 180);
  CHECK(label_counts(a.dataset, "y") == std::map<std::string, std::size_t>{{"no", 90}, {"yes", 90}});
  CHECK(a.dataset.digest() == b.dataset.digest());
  // Original rows come first, unchanged.
  for (std::size_t r = 0; r < 100; ++r) {
    CHECK(a.dataset.column(0).cells[r] == d.column(0).cells[r]);
  }
  const StepResult other = apply_step(d, make_step(StepKind::kOversample, SamplingParams{1.0, 43, std::nullopt}));
  CHECK(other.dataset.digest() != a.dataset.digest());
  CHECK(*detect_class_imbalance(a.dataset).score == doctest::Approx(1.0));
}

TEST_CASE("oversampling to a partial ratio") {
  const StepResult r = apply_step(ninety_ten(), make_step(StepKind::kOversample, SamplingParams{0.5, 1, std::nullopt}));
  CHECK(label_counts(r.dataset, "y")["yes"] == 45);
}

TEST_CASE("undersampling keeps original row order") {
  const StepResult r = apply_step(ninety_ten(), make_step(StepKind::kUndersample, SamplingParams{1.0, 7, std::nullopt}));
  CHECK(r.dataset.row_count() == 20);
  CHECK(label_counts(r.dataset, "y") == std::map<std::string, std::size_t>{{"no", 10}, {"yes", 10}});
  std::int64_t last = -1;
  for (const Cell& c : r.dataset.column(0).cells) {
    CHECK(std::get<std::int64_t>(c) > last);
    last = std::get<std::int64_t>(c);
  }
}

TEST_CASE("sampling needs a categorical target") {
  const Dataset d = csv("x\n1\n2\n");
  CHECK(code_of([&] { apply_step(d, make_step(StepKind::kUndersample, SamplingParams{})); }) ==
        ErrorCode::kNotApplicable);
}

TEST_CASE("dedupe keeps first occurrences") {
  const Dataset d = csv("a,b\n1,x\n2,y\n1,x\n3,z\n2,y\n");
  const StepResult r = apply_step(d, make_step(StepKind::kDedupe, DedupeParams{}));
  CHECK(r.dataset.row_count() == 3);
  CHECK(*detect_duplicates(r.dataset).score == 1.0);
  CHECK(r.summary.rows_before == 5);
  CHECK(r.summary.rows_after == 3);
}

TEST_CASE("capping integer outliers rounds the fence inward") {
  const Dataset d = csv("v\n1\n2\n3\n4\n5\n6\n7\n8\n9\n100\n");
  const StepResult r = apply_step(d, make_step(StepKind::kCapOutliers, OutlierParams{{"v"}, 1.5}));
  CHECK(std::get<std::int64_t>(r.dataset.column(0).cells[9]) == 14);
  CHECK(r.summary.cells_modified == 1);
  const StepResult dropped = apply_step(d, make_step(StepKind::kDropOutlierRows, OutlierParams{{"v"}, 1.5}));
  CHECK(dropped.dataset.row_count() == 9);
}

TEST_CASE("column and row dropping") {
  const Dataset d = csv("a,b\n1,?\n2,y\n?,z\n");
  const StepResult rows = apply_step(d, make_step(StepKind::kDropRowsMissing, DropRowsMissingParams{{"b"}}));
  CHECK(rows.dataset.row_count() == 2);
  const StepResult any = apply_step(d, make_step(StepKind::kDropRowsMissing, DropRowsMissingParams{}));
  CHECK(any.dataset.row_count() == 1);
  const StepResult col = apply_step(d, make_step(StepKind::kDropColumn, DropColumnParams{"a"}));
  CHECK(col.dataset.column_count() == 1);
  CHECK(col.summary.columns_after == 1);
  CHECK(code_of([&] { apply_step(col.dataset, make_step(StepKind::kDropColumn, DropColumnParams{"b"})); }) ==
        ErrorCode::kInvalidParameterValue);
  CHECK(code_of([&] { apply_step(d, make_step(StepKind::kDropColumn, DropColumnParams{"zz"})); }) ==
        ErrorCode::kColumnNotFound);
}

TEST_CASE("normalize_values trims, lowercases and maps tokens") {
  const Dataset d = csv("c\n\" Yes\"\nyes\nNO \nunknown\n");
  const StepResult r = apply_step(
      d, step("{kind: normalize_values, params: {column: c, transforms: [trim, lowercase, {map: {unknown: ''}}]}}"));
  const Column& c = r.dataset.column(0);
  CHECK(cell_token(c.cells[0]) == "yes");
  CHECK(cell_token(c.cells[2]) == "no");
  CHECK(is_missing(c.cells[3]));
  CHECK(r.summary.cells_modified == 3);
}

TEST_CASE("normalizing away bad tokens restores the numeric type") {
  std::string text = "v\n";
  for (int i = 0; i < 30; ++i) text += std::to_string(i) + "\n";
  text += "unknown\n";
  const Dataset d = csv(text);
  REQUIRE(d.column(0).type_violation_count == 1);
  const StepResult r = apply_step(d, step("{kind: normalize_values, params: {column: v, transforms: [{map: {unknown: ''}}]}}"));
  CHECK(r.dataset.column(0).type_violation_count == 0);
  CHECK(*detect_homogeneity(r.dataset).score == 1.0);
}

TEST_CASE("drop_flagged_labels removes rows whose neighbours disagree") {
  std::string text = "x,y\n";
  for (int i = 0; i < 20; ++i) text += std::to_string(i) + "," + (i < 10 ? "a" : "b") + "\n";
  text += "3,b\n";
  const Dataset d = csv(text, {{"y", Role::kTarget}});
  const StepResult r = apply_step(d, make_step(StepKind::kDropFlaggedLabels, DropFlaggedLabelsParams{0.5, 3}));
  CHECK(r.dataset.row_count() < d.row_count());
  CHECK(*detect_label_noise(r.dataset, [] {
          AssessConfig c;
          c.label_noise_k = 3;
          return c;
        }()).score >= *detect_label_noise(d, [] {
          AssessConfig c;
          c.label_noise_k = 3;
          return c;
        }()).score);
}

TEST_CASE("plan parsing is strict") {
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps: []\n"); }) == ErrorCode::kPlanSyntaxError);
  CHECK(code_of([] { parse_plan("steps:\n  - {kind: dedupe}\n"); }) == ErrorCode::kMissingParameter);
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps:\n  - {kind: shuffle}\n"); }) == ErrorCode::kUnknownStepKind);
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps:\n  - {kind: impute, params: {strategy: mean}}\n"); }) ==
        ErrorCode::kMissingParameter);
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps:\n  - {kind: dedupe, params: {bogus: 1}}\n"); }) ==
        ErrorCode::kInvalidParameterValue);
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps:\n  - {kind: dedupe, colour: red}\n"); }) ==
        ErrorCode::kPlanSyntaxError);
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps:\n  - {kind: oversample, params: {target_ratio: 1}}\n"); }) ==
        ErrorCode::kMissingParameter);
  CHECK(code_of([] { parse_plan("plan_id: p\nsteps:\n  - {kind: oversample, params: {target_ratio: 2}}\n"); }) ==
        ErrorCode::kInvalidParameterValue);
  CHECK(code_of([] { parse_plan("plan_id: [unclosed\n"); }) == ErrorCode::kPlanSyntaxError);
}

TEST_CASE("plan JSON round trip") {
  const RemediationPlan p = load_plan(readiness::testing::data_dir() / "adult_plan.yaml");
  CHECK(p.steps.size() == 4);
  CHECK(p.actor->persona == Persona::kSubjectMatterExpert);
  CHECK(plan_from_json(plan_to_json(p)) == p);
}

TEST_CASE("seed override reaches every sampling step") {
  RemediationPlan p = load_plan(readiness::testing::data_dir() / "adult_plan.yaml");
  override_seeds(p, 99);
  CHECK(std::get<SamplingParams>(p.steps.back().params).seed == 99);
}

TEST_CASE("apply_plan records one ledger entry per step and tags failures with the step") {
  const Dataset d = csv("v,y\n1,a\n?,b\n1,a\n", {{"y", Role::kTarget}});
  RemediationPlan p = parse_plan(
      "plan_id: p1\nactor: {name: Ana, persona: data_steward}\nsteps:\n"
      "  - {kind: impute, params: {column: v, strategy: median}}\n"
      "  - {kind: dedupe, actor: {name: Bo, persona: ml_engineer}}\n");
  LineageLedger ledger;
  const PlanResult r = apply_plan(d, p, &ledger);
  CHECK(r.dataset.row_count() == 2);
  const auto entries = ledger.entries();
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].actor.name == "Ana");
  CHECK(entries[1].actor.name == "Bo");
  CHECK(entries[1].output_digest == r.dataset.digest());
  CHECK(entries[0].operation_detail["plan_id"] == "p1");

  p.steps.push_back(make_step(StepKind::kImpute, ImputeParams{"nope", ImputeStrategy::kMode, {}}));
  try {
    apply_plan(d, p);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kColumnNotFound);
    CHECK(e.step_index() == 3);
  }
}

TEST_CASE("uniform_below stays in range and hits every value") {
  std::mt19937_64 engine(3);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) seen[uniform_below(engine, 7)] += 1;
  for (int count : seen) CHECK(count > 800);
}

}  // TEST_SUITE
