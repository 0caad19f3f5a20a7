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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "readiness/remediation.hpp"
#include "readiness/report.hpp"

namespace readiness {

namespace {

using nlohmann::json;

// Format-neutral report content; Markdown and HTML are projections of it.
struct Block {
  enum class Kind { kHeading, kParagraph, kTable, kList, kBars };
  Kind kind = Kind::kParagraph;
  int level = 2;
  std::string text;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> items;
  std::vector<std::pair<std::string, double>> bars;  // label, fraction in [0, 1]
};

class Document {
 public:
  void heading(int level, std::string text) {
    Block b;
    b.kind = Block::Kind::kHeading;
    b.level = level;
    b.text = std::move(text);
    blocks_.push_back(std::move(b));
  }
  void paragraph(std::string text) {
    Block b;
    b.text = std::move(text);
    blocks_.push_back(std::move(b));
  }
  void table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
    Block b;
    b.kind = Block::Kind::kTable;
    b.header = std::move(header);
    b.rows = std::move(rows);
    blocks_.push_back(std::move(b));
  }
  void list(std::vector<std::string> items) {
    if (items.empty()) items.push_back("none");
    Block b;
    b.kind = Block::Kind::kList;
    b.items = std::move(items);
    blocks_.push_back(std::move(b));
  }
  void bars(std::string title, std::vector<std::pair<std::string, double>> bars) {
    Block b;
    b.kind = Block::Kind::kBars;
    b.text = std::move(title);
    b.bars = std::move(bars);
    blocks_.push_back(std::move(b));
  }
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  std::vector<Block> blocks_;
};

std::string score_text(const std::optional<double>& score) {
  return score ? fmt::format("{:.4f}", *score) : std::string("n/a");
}

std::string pct_text(double fraction) { return fmt::format("{:.2f}%", 100.0 * fraction); }

std::string num_text(double value) {
  if (std::abs(value) >= 1e6 || value == std::floor(value)) return format_real(value);
  return fmt::format("{:.4f}", value);
}

std::string or_placeholder(const std::string& value, const char* placeholder = "not provided") {
  return value.empty() ? std::string(placeholder) : value;
}

std::string join(const std::vector<std::string>& items, const char* separator = ", ") {
  std::string out;
  for (const std::string& item : items) {
    if (!out.empty()) out += separator;
    out += item;
  }
  return out;
}

std::string short_digest(const Digest& digest) { return digest.hex().substr(0, 12); }

std::string delta_text(const std::optional<double>& from, const std::optional<double>& to) {
  if (!from || !to) return "n/a";
  return fmt::format("{:+.4f}", *to - *from);
}

std::string status_text(const QualityFinding& f) {
  if (!f.applicable()) return "not applicable";
  return f.flagged ? "flagged" : "ok";
}

std::string finding_heading(Dimension d) {
  if (d == Dimension::kDataHomogeneity) return std::string(display_name(d)) + " (incl. inconsistent values)";
  return std::string(display_name(d));
}

void basic_metadata_section(Document& doc, const BasicMetadata& m) {
  doc.heading(2, "Basic Metadata");
  doc.paragraph("Basic information about data.");
  doc.table({"Field", "Value"},
            {{"Data Owner", or_placeholder(m.data_owner)},
             {"Version", or_placeholder(m.version)},
             {"Generation Date", or_placeholder(m.generation_date)},
             {"Type", m.data_type},
             {"Description", or_placeholder(m.description)},
             {"Tags", m.tags.empty() ? "none" : join(m.tags)},
             {"Intended Usage", or_placeholder(m.intended_usage)},
             {"Contact Person", or_placeholder(m.contact_person)}});
}

void summary_section(Document& doc, const ReadinessReport& r) {
  const ReportSummary& s = r.summary;
  doc.heading(2, "Summary of Quality and Readiness Assessment");
  doc.paragraph(fmt::format("Overview of original against final data quality for {}.",
                            or_placeholder(s.source, "the input data")));
  doc.heading(3, "Original and updated data profile");
  const std::string none = "not performed";
  auto upd = [&](auto field) { return s.updated ? field(*s.updated) : none; };
  doc.table({"Measure", "Original", "Updated"},
            {{"Rows", std::to_string(s.baseline.rows),
              upd([](const ProfileCounts& c) { return std::to_string(c.rows); })},
             {"Columns", std::to_string(s.baseline.columns),
              upd([](const ProfileCounts& c) { return std::to_string(c.columns); })},
             {"Missing cells", std::to_string(s.baseline.missing_cells),
              upd([](const ProfileCounts& c) { return std::to_string(c.missing_cells); })},
             {"Dataset digest", short_digest(s.baseline.digest),
              upd([](const ProfileCounts& c) { return short_digest(c.digest); })}});
  doc.heading(3, "Original and updated quality profile");
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, double>> bars;
  for (const DimensionScores& d : s.scores) {
    rows.push_back({std::string(display_name(d.dimension)), score_text(d.baseline),
                    s.updated ? score_text(d.updated) : none, delta_text(d.baseline, d.updated)});
    if (d.baseline) bars.emplace_back(std::string(display_name(d.dimension)) + " (original)", *d.baseline);
    if (d.updated) bars.emplace_back(std::string(display_name(d.dimension)) + " (updated)", *d.updated);
  }
  rows.push_back({"Overall", score_text(s.baseline_overall), s.updated ? score_text(s.updated_overall) : none,
                  delta_text(s.baseline_overall, s.updated_overall)});
  doc.table({"Dimension", "Original", "Updated", "Change"}, std::move(rows));
  doc.bars("Scores (1 = ready)", std::move(bars));
}

std::string distribution_text(const ColumnProfile& c) {
  if (c.histogram && c.histogram->is_numeric()) {
    const Histogram& h = *c.histogram;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      parts.push_back(fmt::format("[{}, {}{}: {}", num_text(h.edges[i]), num_text(h.edges[i + 1]),
                                  i + 1 == h.counts.size() ? "]" : ")", h.counts[i]));
    }
    return join(parts, "; ");
  }
  if (!c.top_values.empty()) {
    std::vector<std::string> parts;
    for (const ValueCount& v : c.top_values) parts.push_back(fmt::format("{}: {}", v.value, v.count));
    return join(parts, "; ");
  }
  return "no values";
}

void profile_section(Document& doc, const DataProfile& p) {
  doc.heading(3, "Number of rows and columns");
  const double cells = static_cast<double>(p.row_count * p.column_count);
  doc.paragraph(fmt::format("{} rows and {} columns; {} missing cells ({} of all cells).", p.row_count,
                            p.column_count, p.missing_cells(),
                            pct_text(cells == 0 ? 0.0 : static_cast<double>(p.missing_cells()) / cells)));

  doc.heading(3, "Basic properties of each column");
  std::vector<std::vector<std::string>> rows;
  for (const ColumnProfile& c : p.columns) {
    std::vector<std::string> row = {c.name,
                                    std::string(to_string(c.declared_type)),
                                    std::string(to_string(c.role)),
                                    std::to_string(c.missing_count),
                                    pct_text(c.missing_fraction),
                                    std::to_string(c.unique_count)};
    if (c.numeric) {
      for (double v : {c.numeric->min, c.numeric->max, c.numeric->mean, c.numeric->median, c.numeric->std_dev}) {
        row.push_back(num_text(v));
      }
    } else {
      row.insert(row.end(), 5, "-");
    }
    rows.push_back(std::move(row));
  }
  doc.table({"Column", "Type", "Role", "Missing", "Missing %", "Unique", "Min", "Max", "Mean", "Median",
             "Std dev"},
            std::move(rows));
  std::vector<std::pair<std::string, double>> missing_bars;
  for (const ColumnProfile& c : p.columns) missing_bars.emplace_back(c.name, c.missing_fraction);
  doc.bars("Missing data by column", std::move(missing_bars));

  doc.heading(3, "Column data constraints");
  rows.clear();
  for (const ColumnProfile& c : p.columns) {
    std::string range = "-";
    if (c.numeric) range = fmt::format("[{}, {}]", num_text(c.numeric->min), num_text(c.numeric->max));
    std::string pattern = "-";
    if (c.pattern) pattern = fmt::format("{} ({} of values)", c.pattern->pattern, pct_text(c.pattern->coverage));
    rows.push_back({c.name, std::string(to_string(c.declared_type)), std::string(to_string(c.dominant_type)),
                    fmt::format("{:.4f}", c.dominance), std::to_string(c.type_violation_count), range,
                    pattern});
  }
  doc.table({"Column", "Declared type", "Dominant type", "Dominance", "Type violations", "Range", "Pattern"},
            std::move(rows));

  doc.heading(3, "Value distributions");
  std::vector<std::string> items;
  for (const ColumnProfile& c : p.columns) items.push_back(c.name + ": " + distribution_text(c));
  doc.list(std::move(items));

  doc.heading(3, "Pairwise column correlations");
  rows.clear();
  std::size_t undefined = 0;
  for (const CorrelationEntry& e : p.correlations) {
    if (!e.defined()) {
      ++undefined;
      continue;
    }
    rows.push_back({e.column_a, e.column_b, std::string(to_string(e.method)), fmt::format("{:.4f}", *e.value),
                    std::to_string(e.observations)});
  }
  if (rows.empty()) {
    doc.paragraph("No defined column pair correlation.");
  } else {
    doc.table({"Column A", "Column B", "Method", "Value", "Observations"}, std::move(rows));
  }
  if (undefined > 0) {
    doc.paragraph(fmt::format("{} pair(s) are undefined (constant column or too few observations).", undefined));
  }
}

std::string recommendation_text(const Recommendation& r) {
  if (!r.step) return r.summary;
  return r.summary + " Step: " + describe_step(*r.step);
}

void assessment_section(Document& doc, const QualityAssessment& a) {
  std::size_t applicable = 0;
  for (const QualityFinding& f : a.findings) applicable += f.applicable() ? 1 : 0;
  doc.paragraph(fmt::format("Overall readiness score: {} (mean of {} applicable dimension(s)).",
                            score_text(a.overall_score), applicable));
  std::vector<std::vector<std::string>> rows;
  for (const QualityFinding& f : a.findings) {
    rows.push_back({std::string(display_name(f.dimension)), score_text(f.score), status_text(f)});
  }
  doc.table({"Dimension", "Score", "Status"}, std::move(rows));
  for (const QualityFinding& f : a.findings) {
    doc.heading(3, finding_heading(f.dimension));
    doc.paragraph(fmt::format("Score: {}. Status: {}. Metric: {}.", score_text(f.score), status_text(f),
                              f.metric_id));
    doc.paragraph(f.explanation);
    if (!f.applicable()) continue;
    std::vector<std::string> evidence;
    evidence.push_back("Affected columns: " + (f.evidence.columns.empty() ? "none" : join(f.evidence.columns)));
    if (f.evidence.row_total > 0) {
      std::vector<std::string> first;
      for (std::size_t i = 0; i < f.evidence.rows.size() && i < 10; ++i) {
        first.push_back(std::to_string(f.evidence.rows[i]));
      }
      evidence.push_back(fmt::format("Affected rows: {} (first: {})", f.evidence.row_total, join(first)));
    } else {
      evidence.push_back("Affected rows: 0");
    }
    if (f.dimension == Dimension::kOutliers && f.evidence.details.contains("columns")) {
      std::vector<std::pair<std::string, double>> bars;
      for (const auto& [name, detail] : f.evidence.details.at("columns").items()) {
        const double cells = detail.at("numeric_cells").get<double>();
        bars.emplace_back(name, cells == 0 ? 0.0 : detail.at("flagged").get<double>() / cells);
      }
      doc.list(std::move(evidence));
      doc.bars("Outlier share by column", std::move(bars));
    } else {
      doc.list(std::move(evidence));
    }
    doc.paragraph("Recommendations:");
    std::vector<std::string> recs;
    for (const Recommendation& r : f.recommendations) recs.push_back(recommendation_text(r));
    doc.list(std::move(recs));
  }
}

const json& detail_of(const LineageEntry& e) {
  static const json empty = json::object();
  return e.operation_detail.is_object() ? e.operation_detail : empty;
}

std::string entry_parameters(const LineageEntry& e) {
  const json& d = detail_of(e);
  switch (e.operation) {
    case Operation::kRemediationStep:
      return describe_step(step_from_json(d.at("step")));
    case Operation::kIngest:
      return "source=" + d.value("source", std::string());
    case Operation::kProfile:
    case Operation::kAssess:
      return "stage=" + d.value("stage", std::string());
    case Operation::kReportRender: {
      std::vector<std::string> formats;
      if (d.contains("formats")) formats = d.at("formats").get<std::vector<std::string>>();
      return "formats=" + join(formats, "+");
    }
  }
  return {};
}

std::string entry_result(const LineageEntry& e) {
  const json& d = detail_of(e);
  switch (e.operation) {
    case Operation::kIngest:
    case Operation::kProfile:
      return fmt::format("{} rows, {} columns", d.value("rows", 0), d.value("columns", 0));
    case Operation::kAssess: {
      std::vector<std::string> parts;
      if (d.contains("scores")) {
        for (const auto& [name, score] : d.at("scores").items()) {
          parts.push_back(name + " " + (score.is_null() ? std::string("n/a") : fmt::format("{:.4f}", score.get<double>())));
        }
      }
      const json overall = d.value("overall_score", json(nullptr));
      return fmt::format("overall {}; {}",
                         overall.is_null() ? std::string("n/a") : fmt::format("{:.4f}", overall.get<double>()),
                         join(parts, "; "));
    }
    case Operation::kRemediationStep: {
      const json& c = d.at("change");
      return fmt::format("rows {} -> {}, columns {} -> {}, {} cell(s) modified",
                         c.at("rows_before").get<std::size_t>(), c.at("rows_after").get<std::size_t>(),
                         c.at("columns_before").get<std::size_t>(), c.at("columns_after").get<std::size_t>(),
                         c.at("cells_modified").get<std::size_t>());
    }
    case Operation::kReportRender:
      return "report rendered";
  }
  return {};
}

void lineage_section(Document& doc, const ReadinessReport& r) {
  doc.heading(2, "Lineage of Operations");
  doc.paragraph("Record of data operations by various personas, in chronological order.");

  doc.heading(3, "Methods used with input and output parameters");
  std::vector<std::vector<std::string>> rows;
  for (const LineageEntry& e : r.lineage) {
    rows.push_back({std::to_string(e.entry_id), e.timestamp, e.actor.name, std::string(to_string(e.actor.persona)),
                    std::string(to_string(e.operation)), entry_parameters(e), short_digest(e.input_digest),
                    short_digest(e.output_digest)});
  }
  if (rows.empty()) {
    doc.paragraph("none recorded");
  } else {
    doc.table({"#", "Timestamp", "Actor", "Persona", "Operation", "Parameters", "Input", "Output"},
              std::move(rows));
  }

  doc.heading(3, "Detailed Results");
  std::vector<std::string> items;
  for (const LineageEntry& e : r.lineage) {
    items.push_back(fmt::format("#{} {}: {}", e.entry_id, to_string(e.operation), entry_result(e)));
  }
  doc.list(std::move(items));

  doc.heading(3, "Explanation of results");
  items.clear();
  if (!r.updated_assessment) {
    items.push_back("No remediation was applied; the baseline assessment describes the data as delivered.");
  } else {
    for (const DimensionScores& d : r.summary.scores) {
      if (!d.baseline || !d.updated) {
        items.push_back(fmt::format("{}: {} before, {} after.", display_name(d.dimension),
                                    score_text(d.baseline), score_text(d.updated)));
        continue;
      }
      const char* verb = *d.updated > *d.baseline ? "improved" : *d.updated < *d.baseline ? "declined" : "unchanged";
      items.push_back(fmt::format("{} {} from {} to {}.", display_name(d.dimension), verb,
                                  score_text(d.baseline), score_text(d.updated)));
    }
    items.push_back(fmt::format("Overall readiness moved from {} to {}.", score_text(r.summary.baseline_overall),
                                score_text(r.summary.updated_overall)));
  }
  doc.list(std::move(items));

  doc.heading(3, "Recommendations or suggested actions");
  items.clear();
  const QualityAssessment& last = r.updated_assessment ? *r.updated_assessment : r.baseline_assessment;
  for (const QualityFinding& f : last.findings) {
    if (!f.flagged) continue;
    for (const Recommendation& rec : f.recommendations) {
      items.push_back(std::string(display_name(f.dimension)) + ": " + recommendation_text(rec));
    }
  }
  doc.list(std::move(items));

  doc.heading(3, "SME inputs and remediations applied");
  items.clear();
  for (const LineageEntry& e : r.lineage) {
    if (e.operation != Operation::kRemediationStep) continue;
    const RemediationStep step = step_from_json(e.operation_detail.at("step"));
    items.push_back(fmt::format("#{} by {} ({}): {}. Rationale: {}", e.entry_id, e.actor.name,
                                to_string(e.actor.persona), describe_step(step),
                                step.rationale.empty() ? std::string("none given") : step.rationale));
  }
  doc.list(std::move(items));

  doc.heading(3, "Changes to dataset");
  rows.clear();
  for (const LineageEntry& e : r.lineage) {
    if (e.operation != Operation::kRemediationStep) continue;
    const json& c = e.operation_detail.at("change");
    rows.push_back({std::to_string(e.entry_id), c.at("kind").get<std::string>(),
                    fmt::format("{} -> {}", c.at("rows_before").get<std::size_t>(), c.at("rows_after").get<std::size_t>()),
                    fmt::format("{} -> {}", c.at("columns_before").get<std::size_t>(),
                                c.at("columns_after").get<std::size_t>()),
                    std::to_string(c.at("cells_modified").get<std::size_t>()), short_digest(e.input_digest),
                    short_digest(e.output_digest)});
  }
  if (rows.empty()) {
    doc.paragraph("none: the dataset was not changed.");
  } else {
    doc.table({"#", "Step", "Rows", "Columns", "Cells modified", "Input", "Output"}, std::move(rows));
  }
}

void governance_section(Document& doc, const GovernanceInfo& g) {
  doc.heading(2, "Data Governance");
  doc.paragraph("Set of rules and policies for this data.");
  const char* none = "none declared";
  doc.table({"Field", "Value"},
            {{"Source of Data", or_placeholder(g.data_source, none)},
             {"Usage Restrictions", g.usage_restrictions.empty() ? none : join(g.usage_restrictions, "; ")},
             {"Policy Restrictions", g.policy_restrictions.empty() ? none : join(g.policy_restrictions, "; ")},
             {"License", or_placeholder(g.license, none)}});
}

void references_section(Document& doc, const References& refs) {
  doc.heading(2, "References");
  doc.heading(3, "Details of metrics");
  std::vector<std::string> items;
  for (const MetricReference& m : refs.metrics) {
    std::string params = m.parameters.empty() ? std::string("none") : m.parameters.dump();
    items.push_back(fmt::format("{} ({}): {} Parameters: {}. Citation: {}", display_name(m.dimension), m.metric_id,
                                m.formula, params, m.citation));
  }
  doc.list(std::move(items));
  doc.heading(3, "Overview of remediations");
  std::vector<std::vector<std::string>> rows;
  for (const RemediationOverview& o : refs.remediations) {
    rows.push_back({std::string(to_string(o.kind)), o.description, std::to_string(o.times_applied)});
  }
  doc.table({"Step kind", "Description", "Times applied"}, std::move(rows));
  doc.heading(3, "Cite implementation details");
  doc.list(refs.implementation);
}

Document build_document(const ReadinessReport& r) {
  Document doc;
  doc.heading(1, "Data Readiness Report");
  doc.paragraph(fmt::format("Generated by {} {} (report schema {}).", r.tool_name, r.tool_version, r.schema_version));
  basic_metadata_section(doc, r.basic_metadata);
  summary_section(doc, r);
  doc.heading(2, "Baseline Data Profile");
  doc.paragraph("Characteristics of original data.");
  profile_section(doc, r.baseline_profile);
  doc.heading(2, "Baseline Quality and Readiness Assessment");
  doc.paragraph("Evaluation of data on various quality dimensions along with explanations and recommended "
                "remedial actions.");
  assessment_section(doc, r.baseline_assessment);
  doc.heading(2, "Updated Data Profile");
  if (r.updated_profile) {
    doc.paragraph("Characteristics of data after applying remediations.");
    profile_section(doc, *r.updated_profile);
  } else {
    doc.paragraph("Not performed: no remediation plan was applied.");
  }
  doc.heading(2, "Updated Quality and Readiness Assessment");
  if (r.updated_assessment) {
    doc.paragraph("Quality checks on updated data after application of remediations.");
    assessment_section(doc, *r.updated_assessment);
  } else {
    doc.paragraph("Not performed: no remediation plan was applied.");
  }
  lineage_section(doc, r);
  governance_section(doc, r.governance);
  references_section(doc, r.references);
  return doc;
}

std::string md_cell(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string html_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kStyle = R"(body{font-family:Helvetica,Arial,sans-serif;margin:2em auto;max-width:70em;color:#222;line-height:1.4}
h1{border-bottom:2px solid #335}h2{margin-top:2em;border-bottom:1px solid #99a;color:#335}
table{border-collapse:collapse;margin:.6em 0;font-size:.9em}th,td{border:1px solid #ccd;padding:.25em .6em;text-align:left;vertical-align:top}
th{background:#eef}.bars{margin:.6em 0}.bar-row{display:flex;align-items:center;font-size:.85em;margin:2px 0}
.bar-label{width:22em}.bar-track{width:20em;background:#eee;height:.9em}.bar-fill{background:#4a7;height:.9em}.bar-value{margin-left:.6em}
)";

}  // namespace

std::string render_markdown(const ReadinessReport& report) {
  const Document doc = build_document(report);
  std::string out;
  for (const Block& b : doc.blocks()) {
    switch (b.kind) {
      case Block::Kind::kHeading:
        out += std::string(static_cast<std::size_t>(b.level), '#') + " " + b.text + "\n\n";
        break;
      case Block::Kind::kParagraph:
        out += b.text + "\n\n";
        break;
      case Block::Kind::kTable: {
        out += "|";
        for (const std::string& h : b.header) out += " " + md_cell(h) + " |";
        out += "\n|";
        for (std::size_t i = 0; i < b.header.size(); ++i) out += "---|";
        out += "\n";
        for (const auto& row : b.rows) {
          out += "|";
          for (const std::string& cell : row) out += " " + md_cell(cell) + " |";
          out += "\n";
        }
        out += "\n";
        break;
      }
      case Block::Kind::kList:
        for (const std::string& item : b.items) out += "- " + item + "\n";
        out += "\n";
        break;
      case Block::Kind::kBars:
        out += b.text + ":\n\n";
        for (const auto& [label, value] : b.bars) out += fmt::format("- {}: {}\n", label, pct_text(value));
        out += "\n";
        break;
    }
  }
  return out;
}

std::string render_html(const ReadinessReport& report) {
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
                    "<title>Data Readiness Report</title>\n<style>\n";
  out += kStyle;
  out += "</style>\n</head>\n<body>\n";
  const Document doc = build_document(report);
  for (const Block& b : doc.blocks()) {
    switch (b.kind) {
      case Block::Kind::kHeading:
        out += fmt::format("<h{0}>{1}</h{0}>\n", b.level, html_escape(b.text));
        break;
      case Block::Kind::kParagraph:
        out += "<p>" + html_escape(b.text) + "</p>\n";
        break;
      case Block::Kind::kTable:
        out += "<table>\n<tr>";
        for (const std::string& h : b.header) out += "<th>" + html_escape(h) + "</th>";
        out += "</tr>\n";
        for (const auto& row : b.rows) {
          out += "<tr>";
          for (const std::string& cell : row) out += "<td>" + html_escape(cell) + "</td>";
          out += "</tr>\n";
        }
        out += "</table>\n";
        break;
      case Block::Kind::kList:
        out += "<ul>\n";
        for (const std::string& item : b.items) out += "<li>" + html_escape(item) + "</li>\n";
        out += "</ul>\n";
        break;
      case Block::Kind::kBars:
        out += "<div class=\"bars\"><p>" + html_escape(b.text) + ":</p>\n";
        for (const auto& [label, value] : b.bars) {
          const double clamped = std::clamp(value, 0.0, 1.0);
          out += fmt::format(
              "<div class=\"bar-row\"><span class=\"bar-label\">{}</span><span class=\"bar-track\">"
              "<span class=\"bar-fill\" style=\"display:block;width:{:.2f}%\"></span></span>"
              "<span class=\"bar-value\">{}</span></div>\n",
              html_escape(label), 100.0 * clamped, pct_text(value));
        }
        out += "</div>\n";
        break;
    }
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string render_diff_text(const ReportDiff& diff) {
  std::string out;
  for (const ScoreDelta& d : diff.score_deltas) {
    out += fmt::format("{:<18} {:.4f} -> {:.4f} ({:+.4f})\n", to_string(d.dimension), d.from, d.to, d.delta);
  }
  for (Dimension d : diff.only_in_a) out += fmt::format("{:<18} applicable only in the first report\n", to_string(d));
  for (Dimension d : diff.only_in_b) out += fmt::format("{:<18} applicable only in the second report\n", to_string(d));
  out += "overall            " +
         (diff.overall_delta ? fmt::format("{:+.4f}", *diff.overall_delta) : std::string("n/a")) + "\n";
  out += fmt::format("rows {:+d}, columns {:+d}, missing cells {:+d}\n", diff.rows_delta, diff.columns_delta,
                     diff.missing_cells_delta);
  out += fmt::format("lineage entries only in first: {}, only in second: {}\n", diff.lineage_only_in_a.size(),
                     diff.lineage_only_in_b.size());
  return out;
}

}  // namespace readiness
