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

#include "readiness/report.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "readiness/error.hpp"
#include "readiness/json_io.hpp"
#include "readiness/remediation.hpp"

namespace readiness {

namespace {

using nlohmann::json;

[[noreturn]] void sidecar_error(const std::string& message) {
  throw Error(ErrorCode::kSidecarSyntaxError, message);
}

void check_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (const auto& item : node) {
    const std::string key = item.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      sidecar_error("unknown field '" + key + "' in " + where);
    }
  }
}

std::string scalar(const YAML::Node& parent, const char* key, const std::string& where, bool required) {
  const YAML::Node node = parent[key];
  if (!node || node.IsNull()) {
    if (required) sidecar_error(where + "." + key + " is required");
    return {};
  }
  if (!node.IsScalar()) sidecar_error(where + "." + key + " must be a single value");
  std::string value = node.as<std::string>();
  if (required && value.empty()) sidecar_error(where + "." + key + " must be non-empty");
  return value;
}

std::vector<std::string> scalar_list(const YAML::Node& parent, const char* key, const std::string& where) {
  const YAML::Node node = parent[key];
  std::vector<std::string> out;
  if (!node || node.IsNull()) return out;
  if (!node.IsSequence()) sidecar_error(where + "." + key + " must be a list");
  for (const YAML::Node& item : node) {
    if (!item.IsScalar()) sidecar_error(where + "." + key + " entries must be single values");
    out.push_back(item.as<std::string>());
  }
  return out;
}

std::string lowercase(std::string text) {
  for (char& c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return text;
}

std::string file_name(const std::string& source) {
  return std::filesystem::path(source).filename().string();
}

ProfileCounts counts_of(const DataProfile& profile) {
  return {profile.row_count, profile.column_count, profile.missing_cells(), profile.dataset_digest};
}

std::string describe_kind(StepKind kind) {
  switch (kind) {
    case StepKind::kImpute:
      return "Fills missing cells of one column with its mean, median, mode or a constant.";
    case StepKind::kDropRowsMissing:
      return "Removes rows with a missing cell in the listed columns (any column when none are listed).";
    case StepKind::kDropColumn: return "Removes one column.";
    case StepKind::kCapOutliers:
      return "Winsorizes values outside the IQR fences of the step's input to the nearer fence.";
    case StepKind::kDropOutlierRows:
      return "Removes rows holding a value outside the IQR fences of the step's input.";
    case StepKind::kOversample:
      return "Appends seeded random copies of minority-class rows until min/max class count reaches the target ratio.";
    case StepKind::kUndersample:
      return "Removes seeded random majority-class rows until min/max class count reaches the target ratio.";
    case StepKind::kDedupe: return "Removes rows identical to an earlier row, keeping first occurrences.";
    case StepKind::kNormalizeValues:
      return "Applies ordered trim, lowercase and value-map transforms to one column's tokens.";
    case StepKind::kDropFlaggedLabels:
      return "Removes rows whose k-disagreeing-neighbors fraction exceeds the threshold.";
  }
  return {};
}

std::string citation(Dimension dimension) {
  switch (dimension) {
    case Dimension::kMissingValues:
      return "Jain et al. (2020), Overview and importance of data quality for machine learning tasks, KDD.";
    case Dimension::kOutliers:
      return "Tukey (1977), Exploratory Data Analysis; Hyndman and Fan (1996), Sample quantiles in "
             "statistical packages.";
    case Dimension::kClassImbalance:
      return "Shannon (1948), A mathematical theory of communication.";
    case Dimension::kLabelNoise:
      return "Smith, Martinez and Giraud-Carrier (2014), An instance level analysis of data complexity, "
             "Machine Learning 95.";
    case Dimension::kCorrelation:
      return "Pearson (1895); Cramer (1946), Mathematical Methods of Statistics.";
    case Dimension::kDataHomogeneity:
      return "Jain et al. (2020), Overview and importance of data quality for machine learning tasks, KDD.";
    case Dimension::kDuplicates:
      return "Jain et al. (2020), Overview and importance of data quality for machine learning tasks, KDD.";
    case Dimension::kDataBias:
      return "Feldman et al. (2015), Certifying and removing disparate impact, KDD; EEOC Uniform "
             "Guidelines on Employee Selection Procedures (1978), four-fifths rule.";
  }
  return {};
}

const std::vector<std::string>& implementation_notes() {
  static const std::vector<std::string> notes = {
      std::string(kToolName) + " " + std::string(kToolVersion) + ", report schema " +
          std::to_string(kReportSchemaVersion) + ".",
      "Scores lie in [0, 1] with 1 = ready; the overall score is the weighted mean of applicable "
      "scores, with equal weights unless configured.",
      "Dimensions whose preconditions are unmet are reported as not applicable and excluded from "
      "the overall score.",
      "Quantiles use the type-7 definition (linear interpolation between order statistics).",
      "Correlations use Pearson for numeric pairs and Cramer's V for categorical pairs; mixed "
      "numeric and categorical pairs are not measured.",
      "Dataset digests are SHA-256 over a canonical CSV serialization; lineage entries are chained "
      "with SHA-256 over canonical JSON.",
      "Sampling steps draw from a seeded 64-bit Mersenne Twister with rejection-sampled bounded "
      "integers, so results do not depend on the platform.",
      "Citations are given per metric; no external citation manager is used.",
  };
  return notes;
}

void put_counts(json& j, const char* key, const std::optional<ProfileCounts>& counts) {
  if (!counts) {
    j[key] = nullptr;
    return;
  }
  j[key] = {{"rows", counts->rows},
            {"columns", counts->columns},
            {"missing_cells", counts->missing_cells},
            {"digest", counts->digest}};
}

std::optional<ProfileCounts> get_counts(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  ProfileCounts c;
  v.at("rows").get_to(c.rows);
  v.at("columns").get_to(c.columns);
  v.at("missing_cells").get_to(c.missing_cells);
  v.at("digest").get_to(c.digest);
  return c;
}

json summary_to_json(const ReportSummary& s) {
  json j = {{"source", s.source}};
  put_counts(j, "baseline", s.baseline);
  put_counts(j, "updated", s.updated);
  json scores = json::array();
  for (const DimensionScores& d : s.scores) {
    json item = {{"dimension", d.dimension}};
    put_optional(item, "baseline", d.baseline);
    put_optional(item, "updated", d.updated);
    scores.push_back(std::move(item));
  }
  j["scores"] = std::move(scores);
  put_optional(j, "baseline_overall", s.baseline_overall);
  put_optional(j, "updated_overall", s.updated_overall);
  return j;
}

ReportSummary summary_from_json(const json& j) {
  ReportSummary s;
  j.at("source").get_to(s.source);
  s.baseline = *get_counts(j, "baseline");
  s.updated = get_counts(j, "updated");
  for (const json& item : j.at("scores")) {
    DimensionScores d;
    item.at("dimension").get_to(d.dimension);
    d.baseline = get_optional<double>(item, "baseline");
    d.updated = get_optional<double>(item, "updated");
    s.scores.push_back(d);
  }
  s.baseline_overall = get_optional<double>(j, "baseline_overall");
  s.updated_overall = get_optional<double>(j, "updated_overall");
  return s;
}

json references_to_json(const References& r) {
  json metrics = json::array();
  for (const MetricReference& m : r.metrics) {
    metrics.push_back({{"dimension", m.dimension},
                       {"metric_id", m.metric_id},
                       {"formula", m.formula},
                       {"parameters", m.parameters},
                       {"citation", m.citation}});
  }
  json remediations = json::array();
  for (const RemediationOverview& o : r.remediations) {
    remediations.push_back({{"kind", std::string(to_string(o.kind))},
                            {"description", o.description},
                            {"times_applied", o.times_applied}});
  }
  return {{"metrics", metrics}, {"remediations", remediations}, {"implementation", r.implementation}};
}

References references_from_json(const json& j) {
  References r;
  for (const json& item : j.at("metrics")) {
    MetricReference m;
    item.at("dimension").get_to(m.dimension);
    item.at("metric_id").get_to(m.metric_id);
    item.at("formula").get_to(m.formula);
    m.parameters = item.at("parameters");
    item.at("citation").get_to(m.citation);
    r.metrics.push_back(std::move(m));
  }
  for (const json& item : j.at("remediations")) {
    RemediationOverview o;
    o.kind = step_kind_from_string(item.at("kind").get<std::string>());
    item.at("description").get_to(o.description);
    item.at("times_applied").get_to(o.times_applied);
    r.remediations.push_back(std::move(o));
  }
  j.at("implementation").get_to(r.implementation);
  return r;
}

nlohmann::ordered_json ordered(const json& j) { return nlohmann::ordered_json::parse(j.dump()); }

// Final state of a report: the updated parts when present.
const QualityAssessment& final_assessment(const ReadinessReport& r) {
  return r.updated_assessment ? *r.updated_assessment : r.baseline_assessment;
}
const DataProfile& final_profile(const ReadinessReport& r) {
  return r.updated_profile ? *r.updated_profile : r.baseline_profile;
}

}  // namespace

Metadata parse_metadata(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    sidecar_error("sidecar: line " + std::to_string(e.mark.line + 1) + ", column " +
                  std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) sidecar_error("sidecar must be a mapping");
  check_keys(root, {"basic_metadata", "governance"}, "sidecar");
  const YAML::Node basic = root["basic_metadata"];
  if (!basic || !basic.IsMap()) sidecar_error("sidecar needs a 'basic_metadata' mapping");
  check_keys(basic,
             {"data_owner", "version", "generation_date", "data_type", "description", "tags",
              "intended_usage", "contact_person"},
             "basic_metadata");
  Metadata m;
  const std::string where = "basic_metadata";
  m.basic.data_owner = scalar(basic, "data_owner", where, false);
  m.basic.version = scalar(basic, "version", where, true);
  m.basic.generation_date = scalar(basic, "generation_date", where, true);
  const std::string type = scalar(basic, "data_type", where, true);
  if (lowercase(type) != "structured") {
    throw Error(ErrorCode::kUnsupportedDataType,
                "data_type '" + type + "' is not supported; only structured data can be assessed");
  }
  m.basic.data_type = "structured";
  m.basic.description = scalar(basic, "description", where, false);
  m.basic.tags = scalar_list(basic, "tags", where);
  m.basic.intended_usage = scalar(basic, "intended_usage", where, false);
  m.basic.contact_person = scalar(basic, "contact_person", where, false);
  if (const YAML::Node gov = root["governance"]; gov && !gov.IsNull()) {
    if (!gov.IsMap()) sidecar_error("'governance' must be a mapping");
    check_keys(gov, {"data_source", "usage_restrictions", "policy_restrictions", "license"}, "governance");
    m.governance.data_source = scalar(gov, "data_source", "governance", false);
    m.governance.usage_restrictions = scalar_list(gov, "usage_restrictions", "governance");
    m.governance.policy_restrictions = scalar_list(gov, "policy_restrictions", "governance");
    m.governance.license = scalar(gov, "license", "governance", false);
  }
  return m;
}

Metadata load_metadata(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSidecarNotFound, "cannot open sidecar '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_metadata(buffer.str());
}

ReadinessReport build_report(const ReportInputs& inputs, const LineageLedger& ledger) {
  if (inputs.baseline_profile.dataset_digest != inputs.baseline_assessment.dataset_digest) {
    throw Error(ErrorCode::kDigestMismatch,
                "baseline profile (" + inputs.baseline_profile.dataset_digest.hex() +
                    ") and baseline assessment (" + inputs.baseline_assessment.dataset_digest.hex() +
                    ") describe different data");
  }
  if (inputs.updated_profile.has_value() != inputs.updated_assessment.has_value()) {
    throw Error(ErrorCode::kInvalidParameterValue,
                "updated profile and updated assessment must be given together");
  }
  ReadinessReport report;
  report.lineage = ledger.entries();
  if (inputs.updated_profile) {
    const Digest& updated = inputs.updated_profile->dataset_digest;
    if (updated != inputs.updated_assessment->dataset_digest) {
      throw Error(ErrorCode::kDigestMismatch,
                  "updated profile (" + updated.hex() + ") and updated assessment (" +
                      inputs.updated_assessment->dataset_digest.hex() + ") describe different data");
    }
    const LineageEntry* last = nullptr;
    for (const LineageEntry& e : report.lineage) {
      if (e.operation == Operation::kRemediationStep) last = &e;
    }
    if (!last || last->output_digest != updated) {
      throw Error(ErrorCode::kDigestMismatch,
                  "updated profile (" + updated.hex() + ") and the ledger's last remediation output (" +
                      (last ? last->output_digest.hex() : std::string("none")) + ") differ");
    }
  }
  report.basic_metadata = inputs.metadata.basic;
  report.governance = inputs.metadata.governance;
  report.baseline_profile = inputs.baseline_profile;
  report.baseline_assessment = inputs.baseline_assessment;
  report.updated_profile = inputs.updated_profile;
  report.updated_assessment = inputs.updated_assessment;

  ReportSummary& s = report.summary;
  s.source = file_name(inputs.source);
  s.baseline = counts_of(inputs.baseline_profile);
  if (inputs.updated_profile) s.updated = counts_of(*inputs.updated_profile);
  s.baseline_overall = inputs.baseline_assessment.overall_score;
  if (inputs.updated_assessment) s.updated_overall = inputs.updated_assessment->overall_score;
  std::set<Dimension> applicable;
  for (Dimension d : kAllDimensions) {
    const QualityFinding* base = inputs.baseline_assessment.find(d);
    const QualityFinding* upd = inputs.updated_assessment ? inputs.updated_assessment->find(d) : nullptr;
    if (!base && !upd) continue;
    DimensionScores scores{d, base ? base->score : std::nullopt, upd ? upd->score : std::nullopt};
    if (scores.baseline || scores.updated) applicable.insert(d);
    s.scores.push_back(scores);
  }
  for (Dimension d : applicable) {
    report.references.metrics.push_back({d, metric_id(d), metric_formula(d),
                                         metric_parameters(d, inputs.baseline_assessment.config),
                                         citation(d)});
  }
  for (int k = 0; k <= static_cast<int>(StepKind::kDropFlaggedLabels); ++k) {
    const auto kind = static_cast<StepKind>(k);
    std::size_t applied = 0;
    for (const LineageEntry& e : report.lineage) {
      if (e.operation != Operation::kRemediationStep) continue;
      const json& step = e.operation_detail.at("step");
      if (step.at("kind").get<std::string>() == to_string(kind)) ++applied;
    }
    report.references.remediations.push_back({kind, describe_kind(kind), applied});
  }
  report.references.implementation = implementation_notes();
  return report;
}

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return "json";
    case ReportFormat::kMarkdown: return "markdown";
    case ReportFormat::kHtml: return "html";
  }
  return "json";
}

ReportFormat report_format_from_string(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  if (text == "html") return ReportFormat::kHtml;
  throw Error(ErrorCode::kInvalidParameterValue,
              "unknown report format '" + std::string(text) + "' (json, markdown or html)");
}

std::string_view report_file_name(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return "report.json";
    case ReportFormat::kMarkdown: return "report.md";
    case ReportFormat::kHtml: return "report.html";
  }
  return "report.json";
}

std::string render(const ReadinessReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return render_json(report);
    case ReportFormat::kMarkdown: return render_markdown(report);
    case ReportFormat::kHtml: return render_html(report);
  }
  return {};
}

std::string render_json(const ReadinessReport& r) {
  nlohmann::ordered_json out;
  out["schema_version"] = r.schema_version;
  out["tool"] = {{"name", r.tool_name}, {"version", r.tool_version}};
  out["basic_metadata"] = ordered(json(r.basic_metadata));
  out["summary"] = ordered(summary_to_json(r.summary));
  out["baseline_profile"] = ordered(json(r.baseline_profile));
  out["baseline_assessment"] = ordered(json(r.baseline_assessment));
  out["updated_profile"] = r.updated_profile ? ordered(json(*r.updated_profile)) : nullptr;
  out["updated_assessment"] = r.updated_assessment ? ordered(json(*r.updated_assessment)) : nullptr;
  out["lineage"] = ordered(json(r.lineage));
  out["governance"] = ordered(json(r.governance));
  out["references"] = ordered(references_to_json(r.references));
  return out.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

ReadinessReport parse_report_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ReadinessReport r;
    j.at("schema_version").get_to(r.schema_version);
    if (r.schema_version != kReportSchemaVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported report schema_version " + std::to_string(r.schema_version));
    }
    j.at("tool").at("name").get_to(r.tool_name);
    j.at("tool").at("version").get_to(r.tool_version);
    j.at("basic_metadata").get_to(r.basic_metadata);
    r.summary = summary_from_json(j.at("summary"));
    j.at("baseline_profile").get_to(r.baseline_profile);
    j.at("baseline_assessment").get_to(r.baseline_assessment);
    if (!j.at("updated_profile").is_null()) r.updated_profile = j.at("updated_profile").get<DataProfile>();
    if (!j.at("updated_assessment").is_null()) {
      r.updated_assessment = j.at("updated_assessment").get<QualityAssessment>();
    }
    j.at("lineage").get_to(r.lineage);
    j.at("governance").get_to(r.governance);
    r.references = references_from_json(j.at("references"));
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
}

ReadinessReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open report '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_report_json(buffer.str());
}

const std::vector<std::string>& section_headings() {
  static const std::vector<std::string> headings = {
      "Basic Metadata",
      "Summary of Quality and Readiness Assessment",
      "Baseline Data Profile",
      "Baseline Quality and Readiness Assessment",
      "Updated Data Profile",
      "Updated Quality and Readiness Assessment",
      "Lineage of Operations",
      "Data Governance",
      "References",
  };
  return headings;
}

ReportDiff diff_reports(const ReadinessReport& a, const ReadinessReport& b) {
  ReportDiff diff;
  const QualityAssessment& qa = final_assessment(a);
  const QualityAssessment& qb = final_assessment(b);
  for (Dimension d : kAllDimensions) {
    const QualityFinding* fa = qa.find(d);
    const QualityFinding* fb = qb.find(d);
    const bool in_a = fa && fa->applicable();
    const bool in_b = fb && fb->applicable();
    if (in_a && in_b) {
      diff.score_deltas.push_back({d, *fa->score, *fb->score, *fb->score - *fa->score});
    } else if (in_a) {
      diff.only_in_a.push_back(d);
    } else if (in_b) {
      diff.only_in_b.push_back(d);
    }
  }
  if (qa.overall_score && qb.overall_score) diff.overall_delta = *qb.overall_score - *qa.overall_score;
  const DataProfile& pa = final_profile(a);
  const DataProfile& pb = final_profile(b);
  diff.rows_delta = static_cast<long long>(pb.row_count) - static_cast<long long>(pa.row_count);
  diff.columns_delta = static_cast<long long>(pb.column_count) - static_cast<long long>(pa.column_count);
  diff.missing_cells_delta =
      static_cast<long long>(pb.missing_cells()) - static_cast<long long>(pa.missing_cells());
  std::set<Digest> hashes_a, hashes_b;
  for (const LineageEntry& e : a.lineage) hashes_a.insert(e.entry_hash);
  for (const LineageEntry& e : b.lineage) hashes_b.insert(e.entry_hash);
  for (const LineageEntry& e : a.lineage) {
    if (!hashes_b.count(e.entry_hash)) diff.lineage_only_in_a.push_back(e.entry_id);
  }
  for (const LineageEntry& e : b.lineage) {
    if (!hashes_a.count(e.entry_hash)) diff.lineage_only_in_b.push_back(e.entry_id);
  }
  return diff;
}

nlohmann::json diff_to_json(const ReportDiff& diff) {
  json deltas = json::array();
  for (const ScoreDelta& d : diff.score_deltas) {
    deltas.push_back({{"dimension", d.dimension}, {"from", d.from}, {"to", d.to}, {"delta", d.delta}});
  }
  json j = {{"score_deltas", deltas},
            {"only_in_a", diff.only_in_a},
            {"only_in_b", diff.only_in_b},
            {"rows_delta", diff.rows_delta},
            {"columns_delta", diff.columns_delta},
            {"missing_cells_delta", diff.missing_cells_delta},
            {"lineage_only_in_a", diff.lineage_only_in_a},
            {"lineage_only_in_b", diff.lineage_only_in_b}};
  put_optional(j, "overall_delta", diff.overall_delta);
  return j;
}

void to_json(nlohmann::json& j, const BasicMetadata& v) {
  j = {{"data_owner", v.data_owner},
       {"version", v.version},
       {"generation_date", v.generation_date},
       {"data_type", v.data_type},
       {"description", v.description},
       {"tags", v.tags},
       {"intended_usage", v.intended_usage},
       {"contact_person", v.contact_person}};
}

void from_json(const nlohmann::json& j, BasicMetadata& v) {
  j.at("data_owner").get_to(v.data_owner);
  j.at("version").get_to(v.version);
  j.at("generation_date").get_to(v.generation_date);
  j.at("data_type").get_to(v.data_type);
  j.at("description").get_to(v.description);
  j.at("tags").get_to(v.tags);
  j.at("intended_usage").get_to(v.intended_usage);
  j.at("contact_person").get_to(v.contact_person);
}

void to_json(nlohmann::json& j, const GovernanceInfo& v) {
  j = {{"data_source", v.data_source},
       {"usage_restrictions", v.usage_restrictions},
       {"policy_restrictions", v.policy_restrictions},
       {"license", v.license}};
}

void from_json(const nlohmann::json& j, GovernanceInfo& v) {
  j.at("data_source").get_to(v.data_source);
  j.at("usage_restrictions").get_to(v.usage_restrictions);
  j.at("policy_restrictions").get_to(v.policy_restrictions);
  j.at("license").get_to(v.license);
}

}  // namespace readiness
