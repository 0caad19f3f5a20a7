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

#include "readiness/quality.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "readiness/clock.hpp"
#include "readiness/error.hpp"
#include "readiness/json_io.hpp"
#include "readiness/knn.hpp"
#include "readiness/stats.hpp"

namespace readiness {

namespace {

using nlohmann::json;

constexpr std::pair<Dimension, std::string_view> kDimensionNames[] = {
    {Dimension::kMissingValues, "missing_values"},
    {Dimension::kOutliers, "outliers"},
    {Dimension::kClassImbalance, "class_imbalance"},
    {Dimension::kLabelNoise, "label_noise"},
    {Dimension::kCorrelation, "correlation"},
    {Dimension::kDataHomogeneity, "data_homogeneity"},
    {Dimension::kDuplicates, "duplicates"},
    {Dimension::kDataBias, "data_bias"},
};

std::string num(double value) { return fmt::format("{:.4f}", value); }
std::string pct(double fraction) { return fmt::format("{:.2f}%", 100.0 * fraction); }

bool in_scope(const Column& column) {
  return column.role == Role::kFeature || column.role == Role::kTarget;
}

QualityFinding make_finding(Dimension dimension) {
  QualityFinding f;
  f.dimension = dimension;
  f.metric_id = metric_id(dimension);
  return f;
}

QualityFinding not_applicable(Dimension dimension, std::string reason) {
  QualityFinding f = make_finding(dimension);
  f.explanation = "Not applicable: " + std::move(reason) + ".";
  return f;
}

Recommendation no_action(std::string why) {
  return Recommendation{"No remediation needed: " + std::move(why) + ".", std::nullopt};
}

Recommendation suggest(StepKind kind, StepParams params, std::string summary) {
  RemediationStep step = make_step(kind, std::move(params), summary);
  return Recommendation{std::move(summary), std::move(step)};
}

// The type a cell's token is expected to parse as for homogeneity purposes.
ValueType reference_type(const Column& column) {
  return column.base_type == ValueType::kText ? column.dominant_type : column.base_type;
}

bool conforms(const std::string& token, ValueType type) {
  const ValueType cls = classify_token(token);
  switch (type) {
    case ValueType::kBoolean: return cls == ValueType::kBoolean;
    case ValueType::kInteger: return cls == ValueType::kInteger;
    case ValueType::kReal: return cls == ValueType::kInteger || cls == ValueType::kReal;
    case ValueType::kText: return cls == ValueType::kText;
  }
  return false;
}

std::string row_key(const Dataset& dataset, std::size_t row) {
  std::string key;
  for (const Column& column : dataset.columns()) {
    const Cell& cell = column.cells[row];
    key.push_back(static_cast<char>('0' + cell.index()));
    const std::string token = cell_token(cell);
    key.append(std::to_string(token.size()));
    key.push_back(':');
    key.append(token);
  }
  return key;
}

}  // namespace

std::string_view to_string(Dimension dimension) {
  for (auto [value, name] : kDimensionNames) {
    if (value == dimension) return name;
  }
  return "missing_values";
}

Dimension dimension_from_string(std::string_view text) {
  for (auto [value, name] : kDimensionNames) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::kInvalidParameterValue, "unknown quality dimension '" + std::string(text) + "'");
}

std::string_view display_name(Dimension dimension) {
  switch (dimension) {
    case Dimension::kMissingValues: return "Missing Values";
    case Dimension::kOutliers: return "Outliers";
    case Dimension::kClassImbalance: return "Class Imbalance";
    case Dimension::kLabelNoise: return "Label Noise";
    case Dimension::kCorrelation: return "Correlation";
    case Dimension::kDataHomogeneity: return "Data Homogeneity";
    case Dimension::kDuplicates: return "Duplicates";
    case Dimension::kDataBias: return "Data Bias";
  }
  return "";
}

void Evidence::add_row(std::size_t row) {
  ++row_total;
  if (rows.size() < kMaxEvidenceRows) rows.push_back(row);
}

void AssessConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidParameterValue, what);
  };
  if (!(correlation_threshold > 0 && correlation_threshold <= 1)) {
    fail("correlation_threshold must lie in (0, 1]");
  }
  if (!(outlier_iqr_multiplier > 0) || !std::isfinite(outlier_iqr_multiplier)) {
    fail("outlier_iqr_multiplier must be positive");
  }
  if (label_noise_k < 1) fail("label_noise_k must be at least 1");
  if (!(label_noise_threshold > 0 && label_noise_threshold <= 1)) {
    fail("label_noise_threshold must lie in (0, 1]");
  }
  if (!(disparate_impact_threshold > 0 && disparate_impact_threshold <= 1)) {
    fail("disparate_impact_threshold must lie in (0, 1]");
  }
  if (dimensions.empty()) fail("at least one quality dimension must be enabled");
  for (const auto& [dimension, weight] : weights) {
    if (!(weight >= 0) || !std::isfinite(weight)) {
      fail("weight for " + std::string(to_string(dimension)) + " must be non-negative");
    }
  }
}

bool AssessConfig::enabled(Dimension dimension) const {
  return std::find(dimensions.begin(), dimensions.end(), dimension) != dimensions.end();
}

const QualityFinding* QualityAssessment::find(Dimension dimension) const {
  for (const QualityFinding& f : findings) {
    if (f.dimension == dimension) return &f;
  }
  return nullptr;
}

std::vector<std::size_t> duplicate_rows(const Dataset& dataset) {
  std::vector<std::size_t> out;
  std::unordered_set<std::string> seen;
  seen.reserve(dataset.row_count());
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    if (!seen.insert(row_key(dataset, r)).second) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> numeric_feature_columns(const Dataset& dataset) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < dataset.column_count(); ++c) {
    const Column& column = dataset.column(c);
    if (column.role == Role::kFeature && column.is_numeric()) out.push_back(c);
  }
  return out;
}

std::optional<ColumnOutliers> find_outliers(const Column& column, double multiplier) {
  std::vector<double> values;
  for (const Cell& cell : column.cells) {
    if (auto v = numeric_value(cell)) values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  ColumnOutliers out;
  out.column = column.name;
  out.numeric_cells = values.size();
  const stats::Fences fences = stats::iqr_fences(std::move(values), multiplier);
  out.lower_fence = fences.lower;
  out.upper_fence = fences.upper;
  for (std::size_t r = 0; r < column.cells.size(); ++r) {
    auto v = numeric_value(column.cells[r]);
    if (v && !fences.contains(*v)) out.rows.push_back(r);
  }
  return out;
}

QualityFinding detect_missing_values(const Dataset& dataset) {
  QualityFinding f = make_finding(Dimension::kMissingValues);
  std::size_t total = 0, missing = 0;
  std::vector<bool> row_has_missing(dataset.row_count(), false);
  json fractions = json::object();
  for (const Column& column : dataset.columns()) {
    if (!in_scope(column)) continue;
    const std::size_t m = column.missing_count();
    total += column.cells.size();
    missing += m;
    const double fraction =
        dataset.row_count() == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(dataset.row_count());
    fractions[column.name] = fraction;
    if (m == 0) continue;
    f.evidence.columns.push_back(column.name);
    for (std::size_t r = 0; r < column.cells.size(); ++r) {
      if (is_missing(column.cells[r])) row_has_missing[r] = true;
    }
    if (fraction <= 0.5) {
      const ImputeStrategy strategy =
          column.is_numeric() ? ImputeStrategy::kMedian : ImputeStrategy::kMode;
      f.recommendations.push_back(suggest(
          StepKind::kImpute, ImputeParams{column.name, strategy, std::nullopt},
          fmt::format("Impute the {} missing cell(s) of '{}' ({} missing) with the column {}.", m,
                      column.name, pct(fraction), strategy == ImputeStrategy::kMedian ? "median" : "mode")));
    } else {
      f.recommendations.push_back(suggest(
          StepKind::kDropColumn, DropColumnParams{column.name},
          fmt::format("Drop '{}': {} of its cells are missing, above the 50% imputation limit.",
                      column.name, pct(fraction))));
    }
  }
  if (total == 0) return not_applicable(Dimension::kMissingValues, "the dataset has no feature or target columns");
  for (std::size_t r = 0; r < row_has_missing.size(); ++r) {
    if (row_has_missing[r]) f.evidence.add_row(r);
  }
  const double score = 1.0 - static_cast<double>(missing) / static_cast<double>(total);
  f.score = score;
  f.flagged = missing > 0;
  f.evidence.details = {{"missing_cells", missing}, {"total_cells", total}, {"column_missing_fraction", fractions}};
  f.explanation = fmt::format(
      "{} of {} cells in feature and target columns are missing ({}), spread over {} column(s) "
      "and {} row(s). Score = 1 - {}/{} = {}.",
      missing, total, pct(static_cast<double>(missing) / static_cast<double>(total)),
      f.evidence.columns.size(), f.evidence.row_total, missing, total, num(score));
  if (f.recommendations.empty()) f.recommendations.push_back(no_action("no cell is missing"));
  return f;
}

QualityFinding detect_outliers(const Dataset& dataset, const AssessConfig& config) {
  const auto numeric = numeric_feature_columns(dataset);
  if (numeric.empty()) return not_applicable(Dimension::kOutliers, "there are no numeric feature columns");
  QualityFinding f = make_finding(Dimension::kOutliers);
  std::size_t total = 0, flagged = 0;
  std::vector<bool> row_flagged(dataset.row_count(), false);
  json per_column = json::object();
  std::vector<std::string> flagged_columns;
  for (std::size_t c : numeric) {
    auto outliers = find_outliers(dataset.column(c), config.outlier_iqr_multiplier);
    if (!outliers) continue;
    total += outliers->numeric_cells;
    flagged += outliers->rows.size();
    per_column[outliers->column] = {{"lower_fence", outliers->lower_fence},
                                    {"upper_fence", outliers->upper_fence},
                                    {"flagged", outliers->rows.size()},
                                    {"numeric_cells", outliers->numeric_cells}};
    if (outliers->rows.empty()) continue;
    flagged_columns.push_back(outliers->column);
    for (std::size_t r : outliers->rows) row_flagged[r] = true;
  }
  if (total == 0) return not_applicable(Dimension::kOutliers, "numeric feature columns contain no values");
  for (std::size_t r = 0; r < row_flagged.size(); ++r) {
    if (row_flagged[r]) f.evidence.add_row(r);
  }
  f.evidence.columns = flagged_columns;
  f.evidence.details = {{"iqr_multiplier", config.outlier_iqr_multiplier},
                        {"flagged_cells", flagged},
                        {"numeric_cells", total},
                        {"columns", per_column}};
  const double score = 1.0 - static_cast<double>(flagged) / static_cast<double>(total);
  f.score = score;
  f.flagged = flagged > 0;
  f.explanation = fmt::format(
      "{} of {} numeric feature cells lie outside the IQR fences [Q1 - {}*IQR, Q3 + {}*IQR] of "
      "their column ({} column(s) affected). Score = 1 - {}/{} = {}.",
      flagged, total, config.outlier_iqr_multiplier, config.outlier_iqr_multiplier,
      flagged_columns.size(), flagged, total, num(score));
  if (flagged > 0) {
    f.recommendations.push_back(suggest(
        StepKind::kCapOutliers, OutlierParams{flagged_columns, config.outlier_iqr_multiplier},
        "Winsorize flagged cells to the nearer IQR fence; row count and label distribution are kept."));
    f.recommendations.push_back(suggest(
        StepKind::kDropOutlierRows, OutlierParams{flagged_columns, config.outlier_iqr_multiplier},
        fmt::format("Alternatively drop the {} row(s) holding an outlying value.", f.evidence.row_total)));
  } else {
    f.recommendations.push_back(no_action("every numeric value lies within its column's fences"));
  }
  return f;
}

QualityFinding detect_class_imbalance(const Dataset& dataset, const AssessConfig& config) {
  const auto target = dataset.first_with_role(Role::kTarget);
  if (!target) return not_applicable(Dimension::kClassImbalance, "no target column is configured");
  const Column& column = dataset.column(*target);
  if (!column.categorical && column.base_type != ValueType::kBoolean) {
    return not_applicable(Dimension::kClassImbalance, "target column '" + column.name + "' is not categorical");
  }
  std::map<std::string, std::size_t> counts;
  for (const Cell& cell : column.cells) {
    if (!is_missing(cell)) counts[cell_token(cell)] += 1;
  }
  if (counts.empty()) {
    return not_applicable(Dimension::kClassImbalance, "target column '" + column.name + "' has no labels");
  }
  std::vector<std::size_t> values;
  std::size_t max = 0, min = SIZE_MAX;
  std::string minority;
  for (const auto& [label, count] : counts) {
    values.push_back(count);
    max = std::max(max, count);
    if (count < min) {
      min = count;
      minority = label;
    }
  }
  QualityFinding f = make_finding(Dimension::kClassImbalance);
  const double score = stats::normalized_entropy(values);
  f.score = score;
  f.flagged = min < max;
  f.evidence.columns = {column.name};
  f.evidence.details = {{"class_counts", counts},
                        {"classes", counts.size()},
                        {"max_min_ratio", static_cast<double>(max) / static_cast<double>(min)}};
  if (counts.size() == 1) {
    f.explanation = fmt::format("Target '{}' holds a single class ('{}'), so the normalized entropy is 0.",
                                column.name, counts.begin()->first);
  } else {
    f.explanation = fmt::format(
        "Target '{}' has {} classes; the largest has {} rows and the smallest ('{}') {} rows "
        "(ratio {}). Score = Shannon entropy of the class proportions / log2({}) = {}.",
        column.name, counts.size(), max, minority, min,
        num(static_cast<double>(max) / static_cast<double>(min)), counts.size(), num(score));
  }
  if (f.flagged) {
    f.recommendations.push_back(suggest(
        StepKind::kOversample, SamplingParams{1.0, config.seed, column.name},
        "Oversample minority classes by duplicating existing rows until class counts match."));
    f.recommendations.push_back(suggest(
        StepKind::kUndersample, SamplingParams{1.0, config.seed, column.name},
        "Alternatively undersample majority classes; fewer rows but no duplicated records."));
  } else {
    f.recommendations.push_back(no_action("classes are equally represented"));
  }
  return f;
}

QualityFinding detect_label_noise(const Dataset& dataset, const AssessConfig& config) {
  const KdnResult kdn = compute_kdn(dataset, config.label_noise_k);
  if (!kdn.applicable) return not_applicable(Dimension::kLabelNoise, kdn.reason);
  QualityFinding f = make_finding(Dimension::kLabelNoise);
  std::size_t flagged = 0;
  double sum = 0;
  for (std::size_t r = 0; r < kdn.kdn.size(); ++r) {
    if (!kdn.kdn[r]) continue;
    sum += *kdn.kdn[r];
    if (*kdn.kdn[r] > config.label_noise_threshold) {
      ++flagged;
      f.evidence.add_row(r);
    }
  }
  const double score = 1.0 - static_cast<double>(flagged) / static_cast<double>(kdn.labeled_rows);
  f.score = score;
  f.flagged = flagged > 0;
  f.evidence.columns = {dataset.column(*dataset.first_with_role(Role::kTarget)).name};
  f.evidence.details = {{"k", config.label_noise_k},
                        {"threshold", config.label_noise_threshold},
                        {"feature_columns", kdn.feature_columns},
                        {"labeled_rows", kdn.labeled_rows},
                        {"flagged_rows", flagged},
                        {"mean_kdn", sum / static_cast<double>(kdn.labeled_rows)}};
  f.explanation = fmt::format(
      "{} of {} labeled rows disagree with more than {} of their {} nearest neighbors (min-max "
      "scaled Euclidean distance over {} numeric feature column(s)). Score = 1 - {}/{} = {}.",
      flagged, kdn.labeled_rows, pct(config.label_noise_threshold), config.label_noise_k,
      kdn.feature_columns.size(), flagged, kdn.labeled_rows, num(score));
  if (flagged > 0) {
    f.recommendations.push_back(suggest(
        StepKind::kDropFlaggedLabels,
        DropFlaggedLabelsParams{config.label_noise_threshold, config.label_noise_k},
        "Have a subject matter expert review the flagged rows first; drop those confirmed as mislabeled."));
  } else {
    f.recommendations.push_back(no_action("every label agrees with its neighborhood"));
  }
  return f;
}

QualityFinding detect_correlation(const Dataset& dataset, const DataProfile& profile,
                                  const AssessConfig& config) {
  std::vector<const CorrelationEntry*> defined;
  for (const CorrelationEntry& e : profile.correlations) {
    if (e.defined()) defined.push_back(&e);
  }
  if (defined.empty()) return not_applicable(Dimension::kCorrelation, "no defined column pair correlation");
  QualityFinding f = make_finding(Dimension::kCorrelation);
  json pairs = json::array();
  std::set<std::string> involved, to_drop;
  std::size_t flagged = 0;
  for (const CorrelationEntry* e : defined) {
    const double strength = e->method == CorrelationMethod::kPearson ? std::abs(*e->value) : *e->value;
    if (strength < config.correlation_threshold) continue;
    ++flagged;
    pairs.push_back({{"column_a", e->column_a},
                     {"column_b", e->column_b},
                     {"method", std::string(to_string(e->method))},
                     {"value", *e->value}});
    involved.insert(e->column_a);
    involved.insert(e->column_b);
    const ColumnProfile* a = profile.find(e->column_a);
    const ColumnProfile* b = profile.find(e->column_b);
    const bool a_droppable = a && a->role == Role::kFeature;
    const bool b_droppable = b && b->role == Role::kFeature;
    std::string drop;
    if (a_droppable && b_droppable) {
      if (a->missing_fraction != b->missing_fraction) {
        drop = a->missing_fraction > b->missing_fraction ? e->column_a : e->column_b;
      } else {
        const auto ia = dataset.find_column(e->column_a).value_or(0);
        const auto ib = dataset.find_column(e->column_b).value_or(0);
        drop = ia > ib ? e->column_a : e->column_b;
      }
    } else if (a_droppable || b_droppable) {
      drop = a_droppable ? e->column_a : e->column_b;
    }
    if (drop.empty()) {
      f.recommendations.push_back(Recommendation{
          fmt::format("'{}' and '{}' are strongly associated ({} = {}); neither is a plain feature, "
                      "so review the pair with a subject matter expert.",
                      e->column_a, e->column_b, to_string(e->method), num(*e->value)),
          std::nullopt});
    } else if (to_drop.insert(drop).second) {
      const std::string& other = drop == e->column_a ? e->column_b : e->column_a;
      const ColumnProfile* kept = drop == e->column_a ? b : a;
      f.recommendations.push_back(suggest(
          StepKind::kDropColumn, DropColumnParams{drop},
          fmt::format("Drop '{}': it is redundant with '{}' ({} = {}){}.", drop, other, to_string(e->method),
                      num(*e->value),
                      kept && kept->role == Role::kProtected
                          ? "; it may also act as a proxy for the protected attribute"
                          : "")));
    }
  }
  const double score = 1.0 - static_cast<double>(flagged) / static_cast<double>(defined.size());
  f.score = score;
  f.flagged = flagged > 0;
  f.evidence.columns.assign(involved.begin(), involved.end());
  f.evidence.details = {{"threshold", config.correlation_threshold},
                        {"defined_pairs", defined.size()},
                        {"flagged_pairs", pairs}};
  f.explanation = fmt::format(
      "{} of {} defined column pairs reach |Pearson r| or Cramer's V >= {}. Score = 1 - {}/{} = {}.",
      flagged, defined.size(), config.correlation_threshold, flagged, defined.size(), num(score));
  if (f.recommendations.empty()) {
    f.recommendations.push_back(no_action("no column pair is strongly correlated"));
  }
  return f;
}

QualityFinding detect_homogeneity(const Dataset& dataset) {
  QualityFinding f = make_finding(Dimension::kDataHomogeneity);
  double sum = 0;
  std::size_t columns = 0;
  json per_column = json::object();
  std::vector<bool> row_flagged(dataset.row_count(), false);
  for (const Column& column : dataset.columns()) {
    if (!in_scope(column)) continue;
    ++columns;
    const std::size_t present = column.non_missing_count();
    double v = 0;
    if (present > 0) {
      v = std::max(static_cast<double>(column.type_violation_count) / static_cast<double>(present),
                   1.0 - column.dominance);
    }
    sum += v;
    if (v == 0) continue;
    const ValueType reference = reference_type(column);
    std::vector<std::string> samples;
    for (std::size_t r = 0; r < column.cells.size(); ++r) {
      const Cell& cell = column.cells[r];
      if (is_missing(cell)) continue;
      const std::string token = cell_token(cell);
      if (conforms(token, reference)) continue;
      row_flagged[r] = true;
      if (samples.size() < 5 && std::find(samples.begin(), samples.end(), token) == samples.end()) {
        samples.push_back(token);
      }
    }
    f.evidence.columns.push_back(column.name);
    per_column[column.name] = {{"declared_type", column.declared_type()},
                               {"dominant_type", column.dominant_type},
                               {"dominance", column.dominance},
                               {"violation_fraction", v},
                               {"sample_violations", samples}};
    NormalizeTransform map_to_missing{NormalizeTransform::Kind::kMap, {}};
    for (const std::string& s : samples) map_to_missing.mapping[s] = "";
    if (!samples.empty()) {
      f.recommendations.push_back(suggest(
          StepKind::kNormalizeValues, NormalizeParams{column.name, {map_to_missing}},
          fmt::format("Map the non-{} token(s) of '{}' to missing (then impute), or replace them "
                      "with corrected values.",
                      to_string(reference), column.name)));
    }
  }
  if (columns == 0) return not_applicable(Dimension::kDataHomogeneity, "the dataset has no feature or target columns");
  for (std::size_t r = 0; r < row_flagged.size(); ++r) {
    if (row_flagged[r]) f.evidence.add_row(r);
  }
  const double mean = sum / static_cast<double>(columns);
  f.score = 1.0 - mean;
  f.flagged = mean > 0;
  f.evidence.details = {{"columns", per_column}, {"columns_assessed", columns}};
  f.explanation = fmt::format(
      "{} of {} feature/target columns contain values inconsistent with the column's type "
      "(mean violation fraction {}). Score = 1 - {} = {}.",
      f.evidence.columns.size(), columns, num(mean), num(mean), num(*f.score));
  if (f.recommendations.empty()) {
    f.recommendations.push_back(no_action("every column is type-consistent"));
  }
  return f;
}

QualityFinding detect_duplicates(const Dataset& dataset) {
  QualityFinding f = make_finding(Dimension::kDuplicates);
  if (dataset.row_count() == 0) return not_applicable(Dimension::kDuplicates, "the dataset has no rows");
  for (std::size_t r : duplicate_rows(dataset)) f.evidence.add_row(r);
  const std::size_t duplicates = f.evidence.row_total;
  const double score = 1.0 - static_cast<double>(duplicates) / static_cast<double>(dataset.row_count());
  f.score = score;
  f.flagged = duplicates > 0;
  f.evidence.details = {{"duplicate_rows", duplicates}, {"rows", dataset.row_count()}};
  f.explanation = fmt::format(
      "{} of {} rows repeat an earlier row in every column (missing equals missing). "
      "Score = 1 - {}/{} = {}.",
      duplicates, dataset.row_count(), duplicates, dataset.row_count(), num(score));
  if (duplicates > 0) {
    f.recommendations.push_back(suggest(StepKind::kDedupe, DedupeParams{},
                                        "Remove repeated rows, keeping the first occurrence."));
  } else {
    f.recommendations.push_back(no_action("every row is unique"));
  }
  return f;
}

QualityFinding detect_bias(const Dataset& dataset, const AssessConfig& config) {
  std::vector<std::size_t> protected_columns;
  for (std::size_t c = 0; c < dataset.column_count(); ++c) {
    if (dataset.column(c).role == Role::kProtected) protected_columns.push_back(c);
  }
  if (protected_columns.empty()) return not_applicable(Dimension::kDataBias, "no protected column is configured");
  const auto target = dataset.first_with_role(Role::kTarget);
  if (!target) return not_applicable(Dimension::kDataBias, "no target column is configured");
  if (!config.favorable_value) {
    return not_applicable(Dimension::kDataBias, "no favorable target value is configured");
  }
  const Column& label = dataset.column(*target);
  QualityFinding f = make_finding(Dimension::kDataBias);
  json per_column = json::object();
  std::optional<double> worst;
  std::string worst_column, worst_group, best_group;
  for (std::size_t c : protected_columns) {
    const Column& group_column = dataset.column(c);
    std::map<std::string, std::pair<std::size_t, std::size_t>> groups;  // size, favorable
    for (std::size_t r = 0; r < dataset.row_count(); ++r) {
      if (is_missing(group_column.cells[r]) || is_missing(label.cells[r])) continue;
      auto& g = groups[cell_token(group_column.cells[r])];
      g.first += 1;
      if (cell_token(label.cells[r]) == *config.favorable_value) g.second += 1;
    }
    json rates = json::object();
    double min_rate = 1, max_rate = 0;
    std::string min_group, max_group;
    for (const auto& [group, counts] : groups) {
      const double rate = static_cast<double>(counts.second) / static_cast<double>(counts.first);
      rates[group] = {{"size", counts.first}, {"favorable", counts.second}, {"rate", rate}};
      if (min_group.empty() || rate < min_rate) {
        min_rate = rate;
        min_group = group;
      }
      if (max_group.empty() || rate > max_rate) {
        max_rate = rate;
        max_group = group;
      }
    }
    json entry = {{"groups", rates}};
    if (groups.empty() || max_rate == 0) {
      entry["disparate_impact"] = nullptr;
      per_column[group_column.name] = entry;
      continue;
    }
    const double di = min_rate / max_rate;
    entry["disparate_impact"] = di;
    entry["flagged"] = di < config.disparate_impact_threshold;
    per_column[group_column.name] = entry;
    f.evidence.columns.push_back(group_column.name);
    if (!worst || di < *worst) {
      worst = di;
      worst_column = group_column.name;
      worst_group = min_group;
      best_group = max_group;
    }
  }
  if (!worst) {
    return not_applicable(Dimension::kDataBias,
                          "no protected group has a favorable outcome '" + *config.favorable_value + "'");
  }
  f.score = *worst;
  f.flagged = *worst < config.disparate_impact_threshold;
  f.evidence.details = {{"favorable_value", *config.favorable_value},
                        {"threshold", config.disparate_impact_threshold},
                        {"protected_columns", per_column}};
  f.explanation = fmt::format(
      "Disparate impact for '{}' is {}: group '{}' receives '{}' at the lowest rate and group '{}' "
      "at the highest. {} the four-fifths threshold {}. Score = min rate / max rate = {}.",
      worst_column, num(*worst), worst_group, *config.favorable_value, best_group,
      f.flagged ? "This is below" : "This meets", config.disparate_impact_threshold, num(*worst));
  if (f.flagged) {
    f.recommendations.push_back(Recommendation{
        fmt::format("Review with a data steward why group '{}' of '{}' receives '{}' less often "
                    "before the data is used for training.",
                    worst_group, worst_column, *config.favorable_value),
        std::nullopt});
    f.recommendations.push_back(suggest(
        StepKind::kOversample, SamplingParams{1.0, config.seed, worst_column},
        fmt::format("Oversample under-represented groups of '{}' by duplicating their rows.", worst_column)));
  } else {
    f.recommendations.push_back(no_action("favorable-outcome rates satisfy the four-fifths rule"));
  }
  return f;
}

std::optional<double> overall_score(const std::vector<QualityFinding>& findings,
                                    const std::map<Dimension, double>& weights) {
  double sum = 0, weight_sum = 0;
  for (const QualityFinding& f : findings) {
    if (!f.score) continue;
    auto it = weights.find(f.dimension);
    const double w = it == weights.end() ? 1.0 : it->second;
    sum += w * *f.score;
    weight_sum += w;
  }
  if (weight_sum == 0) return std::nullopt;
  return std::clamp(sum / weight_sum, 0.0, 1.0);
}

QualityAssessment assess(const Dataset& dataset, const DataProfile& profile, const AssessConfig& config) {
  config.validate();
  if (profile.dataset_digest != dataset.digest()) {
    throw Error(ErrorCode::kProfileMismatch, "profile digest " + profile.dataset_digest.hex() +
                                                 " does not match dataset digest " +
                                                 dataset.digest().hex());
  }
  QualityAssessment a;
  a.dataset_digest = dataset.digest();
  a.config = config;
  a.generated_at = utc_now();
  for (Dimension d : kAllDimensions) {
    if (!config.enabled(d)) continue;
    switch (d) {
      case Dimension::kMissingValues: a.findings.push_back(detect_missing_values(dataset)); break;
      case Dimension::kOutliers: a.findings.push_back(detect_outliers(dataset, config)); break;
      case Dimension::kClassImbalance: a.findings.push_back(detect_class_imbalance(dataset, config)); break;
      case Dimension::kLabelNoise: a.findings.push_back(detect_label_noise(dataset, config)); break;
      case Dimension::kCorrelation: a.findings.push_back(detect_correlation(dataset, profile, config)); break;
      case Dimension::kDataHomogeneity: a.findings.push_back(detect_homogeneity(dataset)); break;
      case Dimension::kDuplicates: a.findings.push_back(detect_duplicates(dataset)); break;
      case Dimension::kDataBias: a.findings.push_back(detect_bias(dataset, config)); break;
    }
  }
  a.overall_score = overall_score(a.findings, config.weights);
  return a;
}

std::string metric_id(Dimension dimension) {
  switch (dimension) {
    case Dimension::kMissingValues: return "readiness.missing_values.cell_fraction/1";
    case Dimension::kOutliers: return "readiness.outliers.iqr_fence/1";
    case Dimension::kClassImbalance: return "readiness.class_imbalance.normalized_entropy/1";
    case Dimension::kLabelNoise: return "readiness.label_noise.kdn/1";
    case Dimension::kCorrelation: return "readiness.correlation.pairwise_threshold/1";
    case Dimension::kDataHomogeneity: return "readiness.data_homogeneity.type_conformance/1";
    case Dimension::kDuplicates: return "readiness.duplicates.exact_row/1";
    case Dimension::kDataBias: return "readiness.data_bias.disparate_impact/1";
  }
  return {};
}

std::string metric_formula(Dimension dimension) {
  switch (dimension) {
    case Dimension::kMissingValues:
      return "1 - (missing cells / total cells) over feature and target columns.";
    case Dimension::kOutliers:
      return "1 - (cells outside [Q1 - m*IQR, Q3 + m*IQR] / numeric feature cells); quartiles by "
             "type-7 linear interpolation.";
    case Dimension::kClassImbalance:
      return "H(p) / log2(C), the Shannon entropy of target class proportions normalized by the "
             "number of classes C; 0 when C = 1.";
    case Dimension::kLabelNoise:
      return "1 - (labeled rows whose k-disagreeing-neighbors fraction exceeds the threshold / "
             "labeled rows); neighbors by Euclidean distance over min-max scaled numeric features.";
    case Dimension::kCorrelation:
      return "1 - (pairs with |Pearson r| or Cramer's V >= tau / defined pairs); Pearson for numeric "
             "pairs, Cramer's V without bias correction for categorical pairs.";
    case Dimension::kDataHomogeneity:
      return "1 - mean over feature and target columns of the fraction of non-missing tokens that "
             "do not conform to the column's declared or dominant type.";
    case Dimension::kDuplicates:
      return "1 - (rows identical to an earlier row / rows).";
    case Dimension::kDataBias:
      return "Disparate impact: min over groups of the favorable-outcome rate divided by the max; "
             "flagged below the four-fifths threshold.";
  }
  return {};
}

nlohmann::json metric_parameters(Dimension dimension, const AssessConfig& config) {
  switch (dimension) {
    case Dimension::kOutliers: return {{"iqr_multiplier", config.outlier_iqr_multiplier}};
    case Dimension::kLabelNoise:
      return {{"k", config.label_noise_k}, {"threshold", config.label_noise_threshold}};
    case Dimension::kCorrelation: return {{"threshold", config.correlation_threshold}};
    case Dimension::kDataBias: {
      json j = {{"threshold", config.disparate_impact_threshold}};
      put_optional(j, "favorable_value", config.favorable_value);
      return j;
    }
    default: return json::object();
  }
}

void to_json(nlohmann::json& j, Dimension d) { j = std::string(to_string(d)); }
void from_json(const nlohmann::json& j, Dimension& d) { d = dimension_from_string(j.get<std::string>()); }

void to_json(nlohmann::json& j, const QualityFinding& v) {
  json recommendations = json::array();
  for (const Recommendation& r : v.recommendations) {
    json item = {{"summary", r.summary}};
    item["step"] = r.step ? step_to_json(*r.step) : json(nullptr);
    recommendations.push_back(std::move(item));
  }
  j = {{"dimension", v.dimension},
       {"applicable", v.applicable()},
       {"flagged", v.flagged},
       {"metric_id", v.metric_id},
       {"explanation", v.explanation},
       {"evidence",
        {{"columns", v.evidence.columns},
         {"rows", v.evidence.rows},
         {"row_total", v.evidence.row_total},
         {"details", v.evidence.details}}},
       {"recommendations", std::move(recommendations)}};
  put_optional(j, "score", v.score);
}

void from_json(const nlohmann::json& j, QualityFinding& v) {
  j.at("dimension").get_to(v.dimension);
  v.score = get_optional<double>(j, "score");
  j.at("flagged").get_to(v.flagged);
  j.at("metric_id").get_to(v.metric_id);
  j.at("explanation").get_to(v.explanation);
  const json& e = j.at("evidence");
  e.at("columns").get_to(v.evidence.columns);
  e.at("rows").get_to(v.evidence.rows);
  e.at("row_total").get_to(v.evidence.row_total);
  v.evidence.details = e.at("details");
  v.recommendations.clear();
  for (const json& item : j.at("recommendations")) {
    Recommendation r;
    item.at("summary").get_to(r.summary);
    if (const json& step = item.at("step"); !step.is_null()) r.step = step_from_json(step);
    v.recommendations.push_back(std::move(r));
  }
}

void to_json(nlohmann::json& j, const AssessConfig& v) {
  json weights = json::object();
  for (const auto& [d, w] : v.weights) weights[std::string(to_string(d))] = w;
  j = {{"correlation_threshold", v.correlation_threshold},
       {"outlier_iqr_multiplier", v.outlier_iqr_multiplier},
       {"label_noise_k", v.label_noise_k},
       {"label_noise_threshold", v.label_noise_threshold},
       {"disparate_impact_threshold", v.disparate_impact_threshold},
       {"dimensions", v.dimensions},
       {"weights", weights},
       {"seed", v.seed}};
  put_optional(j, "favorable_value", v.favorable_value);
}

void from_json(const nlohmann::json& j, AssessConfig& v) {
  j.at("correlation_threshold").get_to(v.correlation_threshold);
  j.at("outlier_iqr_multiplier").get_to(v.outlier_iqr_multiplier);
  j.at("label_noise_k").get_to(v.label_noise_k);
  j.at("label_noise_threshold").get_to(v.label_noise_threshold);
  j.at("disparate_impact_threshold").get_to(v.disparate_impact_threshold);
  j.at("dimensions").get_to(v.dimensions);
  v.weights.clear();
  for (const auto& [key, w] : j.at("weights").items()) v.weights[dimension_from_string(key)] = w.get<double>();
  j.at("seed").get_to(v.seed);
  v.favorable_value = get_optional<std::string>(j, "favorable_value");
}

void to_json(nlohmann::json& j, const QualityAssessment& v) {
  j = {{"dataset_digest", v.dataset_digest},
       {"findings", v.findings},
       {"config", v.config},
       {"generated_at", v.generated_at}};
  put_optional(j, "overall_score", v.overall_score);
}

void from_json(const nlohmann::json& j, QualityAssessment& v) {
  j.at("dataset_digest").get_to(v.dataset_digest);
  j.at("findings").get_to(v.findings);
  j.at("config").get_to(v.config);
  j.at("generated_at").get_to(v.generated_at);
  v.overall_score = get_optional<double>(j, "overall_score");
}

}  // namespace readiness
