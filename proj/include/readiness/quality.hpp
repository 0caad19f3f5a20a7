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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "readiness/dataset.hpp"
#include "readiness/profiler.hpp"
#include "readiness/step.hpp"

namespace readiness {

// Fixed report order.
enum class Dimension {
  kMissingValues,
  kOutliers,
  kClassImbalance,
  kLabelNoise,
  kCorrelation,
  kDataHomogeneity,
  kDuplicates,
  kDataBias,
};

inline constexpr Dimension kAllDimensions[] = {
    Dimension::kMissingValues, Dimension::kOutliers,    Dimension::kClassImbalance,
    Dimension::kLabelNoise,    Dimension::kCorrelation, Dimension::kDataHomogeneity,
    Dimension::kDuplicates,    Dimension::kDataBias,
};

std::string_view to_string(Dimension dimension);
// Throws Error(kInvalidParameterValue).
Dimension dimension_from_string(std::string_view text);
// Title-case label used in rendered reports, e.g. "Class Imbalance".
std::string_view display_name(Dimension dimension);

inline constexpr std::size_t kMaxEvidenceRows = 1000;

struct Evidence {
  std::vector<std::string> columns;
  std::vector<std::size_t> rows;  // capped at kMaxEvidenceRows
  std::size_t row_total = 0;
  nlohmann::json details = nlohmann::json::object();

  void add_row(std::size_t row);
  bool operator==(const Evidence&) const = default;
};

// A suggested action. Carries an executable step when one applies.
struct Recommendation {
  std::string summary;
  std::optional<RemediationStep> step;

  bool operator==(const Recommendation&) const = default;
};

struct QualityFinding {
  Dimension dimension = Dimension::kMissingValues;
  std::optional<double> score;  // nullopt = not applicable
  bool flagged = false;
  std::string metric_id;
  Evidence evidence;
  std::string explanation;
  std::vector<Recommendation> recommendations;

  bool applicable() const { return score.has_value(); }
  bool operator==(const QualityFinding&) const = default;
};

struct AssessConfig {
  double correlation_threshold = 0.8;
  double outlier_iqr_multiplier = 1.5;
  std::size_t label_noise_k = 5;
  double label_noise_threshold = 0.5;
  double disparate_impact_threshold = 0.8;
  std::optional<std::string> favorable_value;
  std::vector<Dimension> dimensions{std::begin(kAllDimensions), std::end(kAllDimensions)};
  // Per-dimension weights for the overall score; absent dimensions weigh 1.
  std::map<Dimension, double> weights;
  // Not used by detectors; seeds the sampling steps they suggest.
  std::uint64_t seed = 0;

  // Throws Error(kInvalidParameterValue).
  void validate() const;
  bool enabled(Dimension dimension) const;
  bool operator==(const AssessConfig&) const = default;
};

struct QualityAssessment {
  Digest dataset_digest;
  std::vector<QualityFinding> findings;
  std::optional<double> overall_score;
  AssessConfig config;
  std::string generated_at;

  const QualityFinding* find(Dimension dimension) const;
  bool operator==(const QualityAssessment&) const = default;
};

// Throws ProfileMismatch when the profile was computed for other data.
QualityAssessment assess(const Dataset& dataset, const DataProfile& profile,
                         const AssessConfig& config = {});

QualityFinding detect_missing_values(const Dataset& dataset);
QualityFinding detect_outliers(const Dataset& dataset, const AssessConfig& config = {});
QualityFinding detect_class_imbalance(const Dataset& dataset, const AssessConfig& config = {});
QualityFinding detect_label_noise(const Dataset& dataset, const AssessConfig& config = {});
QualityFinding detect_correlation(const Dataset& dataset, const DataProfile& profile,
                                  const AssessConfig& config = {});
QualityFinding detect_homogeneity(const Dataset& dataset);
QualityFinding detect_duplicates(const Dataset& dataset);
QualityFinding detect_bias(const Dataset& dataset, const AssessConfig& config = {});

struct ColumnOutliers {
  std::string column;
  double lower_fence = 0;
  double upper_fence = 0;
  std::size_t numeric_cells = 0;
  std::vector<std::size_t> rows;  // rows whose value lies outside the fences
};

// IQR fences over the numeric cells of a column; nullopt when it has none.
std::optional<ColumnOutliers> find_outliers(const Column& column, double multiplier);

// Rows equal in every column to an earlier row, ascending. Missing equals Missing.
std::vector<std::size_t> duplicate_rows(const Dataset& dataset);

// Numeric columns with role feature, in column order.
std::vector<std::size_t> numeric_feature_columns(const Dataset& dataset);

// Weighted mean of applicable scores; nullopt when none apply.
std::optional<double> overall_score(const std::vector<QualityFinding>& findings,
                                    const std::map<Dimension, double>& weights = {});

// Metric identifier and human formula for a dimension.
std::string metric_id(Dimension dimension);
std::string metric_formula(Dimension dimension);
// The configuration values a dimension's metric depends on.
nlohmann::json metric_parameters(Dimension dimension, const AssessConfig& config);

void to_json(nlohmann::json& j, Dimension d);
void from_json(const nlohmann::json& j, Dimension& d);
void to_json(nlohmann::json& j, const QualityFinding& v);
void from_json(const nlohmann::json& j, QualityFinding& v);
void to_json(nlohmann::json& j, const AssessConfig& v);
void from_json(const nlohmann::json& j, AssessConfig& v);
void to_json(nlohmann::json& j, const QualityAssessment& v);
void from_json(const nlohmann::json& j, QualityAssessment& v);

}  // namespace readiness
