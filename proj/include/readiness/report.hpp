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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "readiness/lineage.hpp"
#include "readiness/profiler.hpp"
#include "readiness/quality.hpp"

namespace readiness {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolName = "readiness";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct BasicMetadata {
  std::string data_owner;
  std::string version;
  std::string generation_date;
  std::string data_type = "structured";
  std::string description;
  std::vector<std::string> tags;
  std::string intended_usage;
  std::string contact_person;

  bool operator==(const BasicMetadata&) const = default;
};

struct GovernanceInfo {
  std::string data_source;
  std::vector<std::string> usage_restrictions;
  std::vector<std::string> policy_restrictions;
  std::string license;

  bool operator==(const GovernanceInfo&) const = default;
};

struct Metadata {
  BasicMetadata basic;
  GovernanceInfo governance;
};

// Sidecar YAML with `basic_metadata` and optional `governance` mappings.
// Throws SidecarSyntaxError or UnsupportedDataType.
Metadata parse_metadata(std::string_view text);
// Throws SidecarNotFound plus the parse_metadata errors.
Metadata load_metadata(const std::filesystem::path& path);

struct DimensionScores {
  Dimension dimension = Dimension::kMissingValues;
  std::optional<double> baseline;
  std::optional<double> updated;

  bool operator==(const DimensionScores&) const = default;
};

struct ProfileCounts {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::size_t missing_cells = 0;
  Digest digest;

  bool operator==(const ProfileCounts&) const = default;
};

struct ReportSummary {
  std::string source;  // file name of the input data, no directories
  ProfileCounts baseline;
  std::optional<ProfileCounts> updated;
  std::vector<DimensionScores> scores;
  std::optional<double> baseline_overall;
  std::optional<double> updated_overall;

  bool operator==(const ReportSummary&) const = default;
};

struct MetricReference {
  Dimension dimension = Dimension::kMissingValues;
  std::string metric_id;
  std::string formula;
  nlohmann::json parameters = nlohmann::json::object();
  std::string citation;

  bool operator==(const MetricReference&) const = default;
};

struct RemediationOverview {
  StepKind kind = StepKind::kDedupe;
  std::string description;
  std::size_t times_applied = 0;

  bool operator==(const RemediationOverview&) const = default;
};

struct References {
  std::vector<MetricReference> metrics;
  std::vector<RemediationOverview> remediations;
  std::vector<std::string> implementation;

  bool operator==(const References&) const = default;
};

struct ReadinessReport {
  int schema_version = kReportSchemaVersion;
  std::string tool_name{kToolName};
  std::string tool_version{kToolVersion};
  BasicMetadata basic_metadata;
  ReportSummary summary;
  DataProfile baseline_profile;
  QualityAssessment baseline_assessment;
  std::optional<DataProfile> updated_profile;
  std::optional<QualityAssessment> updated_assessment;
  std::vector<LineageEntry> lineage;
  GovernanceInfo governance;
  References references;

  bool operator==(const ReadinessReport&) const = default;
};

struct ReportInputs {
  Metadata metadata;
  std::string source;  // reduced to its file name
  DataProfile baseline_profile;
  QualityAssessment baseline_assessment;
  std::optional<DataProfile> updated_profile;
  std::optional<QualityAssessment> updated_assessment;
};

// Verifies the ledger and the digest chain between the parts. Throws
// ChainBroken, DigestMismatch or InvalidParameterValue.
ReadinessReport build_report(const ReportInputs& inputs, const LineageLedger& ledger);

enum class ReportFormat { kJson, kMarkdown, kHtml };
std::string_view to_string(ReportFormat format);
// Throws Error(kInvalidParameterValue).
ReportFormat report_format_from_string(std::string_view text);
// report.json, report.md or report.html
std::string_view report_file_name(ReportFormat format);

std::string render(const ReadinessReport& report, ReportFormat format);
std::string render_json(const ReadinessReport& report);
std::string render_markdown(const ReadinessReport& report);
std::string render_html(const ReadinessReport& report);

// Throws Error(kParseError).
ReadinessReport parse_report_json(std::string_view text);
ReadinessReport load_report(const std::filesystem::path& path);

// The nine section headings, in order.
const std::vector<std::string>& section_headings();

struct ScoreDelta {
  Dimension dimension = Dimension::kMissingValues;
  double from = 0;
  double to = 0;
  double delta = 0;  // to - from
};

// Compares the final state of two reports (updated parts when present).
struct ReportDiff {
  std::vector<ScoreDelta> score_deltas;  // dimensions applicable in both
  std::vector<Dimension> only_in_a;
  std::vector<Dimension> only_in_b;
  std::optional<double> overall_delta;
  long long rows_delta = 0;
  long long columns_delta = 0;
  long long missing_cells_delta = 0;
  std::vector<std::uint64_t> lineage_only_in_a;  // entry ids
  std::vector<std::uint64_t> lineage_only_in_b;
};

ReportDiff diff_reports(const ReadinessReport& a, const ReadinessReport& b);
nlohmann::json diff_to_json(const ReportDiff& diff);
std::string render_diff_text(const ReportDiff& diff);

void to_json(nlohmann::json& j, const BasicMetadata& v);
void from_json(const nlohmann::json& j, BasicMetadata& v);
void to_json(nlohmann::json& j, const GovernanceInfo& v);
void from_json(const nlohmann::json& j, GovernanceInfo& v);

}  // namespace readiness
