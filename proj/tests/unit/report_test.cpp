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

#include <fmt/format.h>

#include "readiness/error.hpp"
#include "readiness/profiler.hpp"
#include "readiness/quality.hpp"
#include "readiness/remediation.hpp"
#include "readiness/report.hpp"
#include "support.hpp"

using namespace readiness;
using readiness::testing::csv;

namespace {

constexpr std::string_view kSidecar = R"(basic_metadata:
  data_owner: Records Office
  version: "2"
  generation_date: "2026-02-01"
  data_type: structured
  description: Loan <applications> & outcomes
  tags: [loans]
  intended_usage: Credit modelling
  contact_person: office@example.org
governance:
  data_source: Branch systems
  usage_restrictions: [internal]
  policy_restrictions: []
  license: proprietary
)";

const Actor kActor{"Sam", Persona::kDataScientist};

ReadinessReport make_report(bool with_plan, std::string_view data = {}) {
  const std::string text = data.empty()
                               ? std::string("amount,region,approved\n100,n,yes\n?,s,no\n250,n,no\n100,n,yes\n"
                                             "90,s,no\n400,n,no\n120,s,no\n80,s,yes\n")
                               : std::string(data);
  const Dataset d = csv(text, {{"region", Role::kProtected}, {"approved", Role::kTarget}});
  AssessConfig config;
  config.favorable_value = "yes";
  config.label_noise_k = 3;
  LineageLedger ledger;
  ledger.append(kActor, Operation::kIngest, {{"source", "loans.csv"}}, d.digest(), d.digest());
  ReportInputs in;
  in.metadata = parse_metadata(kSidecar);
  in.source = "/some/dir/loans.csv";
  in.baseline_profile = profile_dataset(d);
  in.baseline_assessment = assess(d, in.baseline_profile, config);
  ledger.append(kActor, Operation::kProfile, {}, d.digest(), d.digest());
  ledger.append(kActor, Operation::kAssess, {}, d.digest(), d.digest());
  if (with_plan) {
    const RemediationPlan plan = parse_plan(
        "plan_id: loans-1\nsteps:\n"
        "  - {kind: impute, params: {column: amount, strategy: median}}\n"
        "  - {kind: dedupe}\n");
    const Dataset updated = apply_plan(d, plan, &ledger, kActor).dataset;
    in.updated_profile = profile_dataset(updated);
    in.updated_assessment = assess(updated, *in.updated_profile, config);
  }
  return build_report(in, ledger);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("summary reflects both states") {
  const ReadinessReport r = make_report(true);
  CHECK(r.summary.source == "loans.csv");
  CHECK(r.summary.baseline.rows == 8);
  REQUIRE(r.summary.updated.has_value());
  CHECK(r.summary.updated->rows == 7);
  CHECK(r.summary.updated->missing_cells == 0);
  CHECK(r.summary.scores.size() == std::size(kAllDimensions));
  CHECK(r.lineage.size() == 5);
  CHECK(r.references.metrics.size() == std::size(kAllDimensions));
  for (const RemediationOverview& o : r.references.remediations) {
    const bool used = o.kind == StepKind::kImpute || o.kind == StepKind::kDedupe;
    CHECK(o.times_applied == (used ? 1u : 0u));
  }
}

TEST_CASE("JSON rendering round trips") {
  for (bool plan : {false, true}) {
    const ReadinessReport r = make_report(plan);
    const std::string json = render_json(r);
    CHECK(parse_report_json(json) == r);
    CHECK(render_json(parse_report_json(json)) == json);
  }
}

TEST_CASE("markdown and html carry all nine section headings") {
  for (bool plan : {false, true}) {
    const ReadinessReport r = make_report(plan);
    const std::string md = render_markdown(r), html = render_html(r);
    std::size_t last_md = 0, last_html = 0;
    for (const std::string& h : section_headings()) {
      CAPTURE(h);
      const std::size_t m = md.find("\n## " + h + "\n");
      const std::size_t t = html.find("<h2>" + h + "</h2>");
      REQUIRE(m != std::string::npos);
      REQUIRE(t != std::string::npos);
      CHECK(m > last_md);
      CHECK(t > last_html);
      last_md = m;
      last_html = t;
    }
  }
}

TEST_CASE("reports without a plan say so instead of omitting sections") {
  const ReadinessReport r = make_report(false);
  const std::string md = render_markdown(r);
  CHECK(md.find("Not performed: no remediation plan was applied.") != std::string::npos);
  CHECK_FALSE(r.updated_profile.has_value());
}

TEST_CASE("every applicable explanation and recommendation is rendered") {
  const ReadinessReport r = make_report(true);
  const std::string md = render_markdown(r);
  for (const QualityFinding& f : r.baseline_assessment.findings) {
    CHECK(md.find(f.explanation) != std::string::npos);
    for (const Recommendation& rec : f.recommendations) CHECK(md.find(rec.summary) != std::string::npos);
  }
}

TEST_CASE("html escapes metadata text") {
  const std::string html = render_html(make_report(false));
  CHECK(html.find("Loan &lt;applications&gt; &amp; outcomes") != std::string::npos);
  CHECK(html.find("<applications>") == std::string::npos);
}

TEST_CASE("diffing a report with itself shows no change") {
  const ReadinessReport r = make_report(true);
  const ReportDiff d = diff_reports(r, r);
  for (const ScoreDelta& s : d.score_deltas) CHECK(s.delta == 0.0);
  CHECK(d.only_in_a.empty());
  CHECK(d.only_in_b.empty());
  CHECK(d.rows_delta == 0);
  CHECK(d.lineage_only_in_a.empty());
  CHECK(d.lineage_only_in_b.empty());
  CHECK(*d.overall_delta == 0.0);
}

TEST_CASE("diff is antisymmetric") {
  const ReadinessReport a = make_report(false);
  const ReadinessReport b = make_report(true);
  const ReportDiff ab = diff_reports(a, b), ba = diff_reports(b, a);
  REQUIRE(ab.score_deltas.size() == ba.score_deltas.size());
  for (std::size_t i = 0; i < ab.score_deltas.size(); ++i) {
    CHECK(ab.score_deltas[i].dimension == ba.score_deltas[i].dimension);
    CHECK(ab.score_deltas[i].delta == -ba.score_deltas[i].delta);
  }
  CHECK(ab.only_in_a == ba.only_in_b);
  CHECK(*ab.overall_delta == -*ba.overall_delta);
  CHECK(ab.rows_delta == -1);
  CHECK(ba.rows_delta == 1);
  CHECK(ab.lineage_only_in_b == ba.lineage_only_in_a);
  CHECK(ab.lineage_only_in_b.size() == 2);
  CHECK(diff_to_json(ab)["rows_delta"] == -1);
}

TEST_CASE("build_report checks that the parts describe the same data") {
  const Dataset a = csv("x\n1\n2\n"), b = csv("x\n1\n3\n");
  ReportInputs in;
  in.metadata = parse_metadata(kSidecar);
  in.baseline_profile = profile_dataset(a);
  in.baseline_assessment = assess(b, profile_dataset(b));
  try {
    build_report(in, LineageLedger{});
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDigestMismatch);
  }
  in.baseline_assessment = assess(a, in.baseline_profile);
  in.updated_profile = profile_dataset(b);
  in.updated_assessment = assess(b, *in.updated_profile);
  try {
    build_report(in, LineageLedger{});
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDigestMismatch);
  }
}

TEST_CASE("sidecar validation") {
  auto code_of = [](std::string_view text) {
    try {
      parse_metadata(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  CHECK(code_of("basic_metadata: {version: '1', generation_date: x, data_type: image}") ==
        ErrorCode::kUnsupportedDataType);
  CHECK(code_of("basic_metadata: {version: '1', generation_date: x, data_type: structured, colour: red}") ==
        ErrorCode::kSidecarSyntaxError);
  CHECK(code_of("basic_metadata: {generation_date: x, data_type: structured}") == ErrorCode::kSidecarSyntaxError);
  CHECK(code_of("basic_metadata: [") == ErrorCode::kSidecarSyntaxError);
  try {
    load_metadata("/nonexistent/sidecar.yaml");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSidecarNotFound);
  }
  const Metadata m = parse_metadata("basic_metadata: {version: 3, generation_date: 2026-01-01, data_type: structured}");
  CHECK(m.basic.version == "3");
  CHECK(m.basic.data_owner.empty());
  CHECK(m.governance.license.empty());
}

TEST_CASE("absent governance renders as none declared") {
  ReadinessReport r = make_report(false);
  r.governance = parse_metadata("basic_metadata: {version: '1', generation_date: x, data_type: structured}").governance;
  const std::string md = render_markdown(r);
  const std::size_t at = md.find("## Data Governance");
  REQUIRE(at != std::string::npos);
  CHECK(md.find("none declared", at) != std::string::npos);
}

TEST_CASE("markdown and html show the same four-decimal scores") {
  const ReadinessReport r = make_report(true);
  const std::string md = render_markdown(r), html = render_html(r);
  for (const DimensionScores& s : r.summary.scores) {
    for (const auto& score : {s.baseline, s.updated}) {
      if (!score) continue;
      const std::string text = fmt::format("{:.4f}", *score);
      CHECK(md.find(text) != std::string::npos);
      CHECK(html.find(text) != std::string::npos);
    }
  }
}

TEST_CASE("diff deltas equal the difference of the embedded scores") {
  const ReadinessReport before = make_report(false), after = make_report(true);
  const ReportDiff d = diff_reports(before, after);
  for (const ScoreDelta& s : d.score_deltas) {
    const double from = *before.baseline_assessment.find(s.dimension)->score;
    const double to = *after.updated_assessment->find(s.dimension)->score;
    CHECK(s.from == from);
    CHECK(s.to == to);
    CHECK(s.delta == to - from);
  }
}

TEST_CASE("format names") {
  CHECK(report_format_from_string("md") == ReportFormat::kMarkdown);
  CHECK(report_file_name(ReportFormat::kHtml) == "report.html");
  CHECK_THROWS_AS(report_format_from_string("pdf"), Error);
}

}  // TEST_SUITE
