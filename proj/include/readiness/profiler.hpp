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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "readiness/dataset.hpp"

namespace readiness {

struct NumericSummary {
  double min = 0;
  double max = 0;
  double mean = 0;
  double median = 0;
  double std_dev = 0;  // population
  double q1 = 0;
  double q3 = 0;

  bool operator==(const NumericSummary&) const = default;
};

struct ValueCount {
  std::string value;
  std::size_t count = 0;

  bool operator==(const ValueCount&) const = default;
};

// Numeric histograms carry edges (bins + 1, strictly increasing); categorical
// ones carry one category label per count.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::string> categories;
  std::vector<std::size_t> counts;

  bool is_numeric() const { return !edges.empty(); }
  bool operator==(const Histogram&) const = default;
};

struct PatternSummary {
  std::string pattern;
  double coverage = 0;

  bool operator==(const PatternSummary&) const = default;
};

struct ColumnProfile {
  std::string name;
  DeclaredType declared_type = DeclaredType::kText;
  ValueType base_type = ValueType::kText;
  Role role = Role::kFeature;
  std::size_t missing_count = 0;
  double missing_fraction = 0;
  std::size_t unique_count = 0;
  // Observed constraints.
  std::size_t type_violation_count = 0;
  ValueType dominant_type = ValueType::kText;
  double dominance = 1.0;

  std::optional<NumericSummary> numeric;
  std::vector<ValueCount> top_values;
  std::optional<PatternSummary> pattern;
  std::optional<Histogram> histogram;

  bool operator==(const ColumnProfile&) const = default;
};

enum class CorrelationMethod { kPearson, kCramersV };
std::string_view to_string(CorrelationMethod method);

struct CorrelationEntry {
  std::string column_a;
  std::string column_b;
  CorrelationMethod method = CorrelationMethod::kPearson;
  std::optional<double> value;  // nullopt = undefined
  std::size_t observations = 0;

  bool defined() const { return value.has_value(); }
  bool operator==(const CorrelationEntry&) const = default;
};

struct DataProfile {
  Digest dataset_digest;
  std::size_t row_count = 0;
  std::size_t column_count = 0;
  std::vector<ColumnProfile> columns;
  std::vector<CorrelationEntry> correlations;
  std::string generated_at;

  std::size_t missing_cells() const;
  const ColumnProfile* find(std::string_view name) const;
  bool operator==(const DataProfile&) const = default;
};

struct ProfileOptions {
  std::size_t histogram_bins = 10;
  std::size_t top_k = 10;
};

DataProfile profile_dataset(const Dataset& dataset, const ProfileOptions& options = {});
ColumnProfile profile_column(const Column& column, std::size_t row_count,
                             const ProfileOptions& options = {});

// Digit -> 'D', ASCII letter -> 'A', anything else literal.
std::string generalize_token(std::string_view token);
// Most frequent generalization (ties to the lexicographically smaller pattern)
// and its share of non-missing cells. Empty column -> ("", 0).
PatternSummary detect_pattern(const Column& column);

// How a column takes part in pairwise correlation, if at all.
enum class CorrelationKind { kNone, kNumeric, kCategorical };
CorrelationKind correlation_kind(const Column& column);

void to_json(nlohmann::json& j, const NumericSummary& v);
void from_json(const nlohmann::json& j, NumericSummary& v);
void to_json(nlohmann::json& j, const Histogram& v);
void from_json(const nlohmann::json& j, Histogram& v);
void to_json(nlohmann::json& j, const ColumnProfile& v);
void from_json(const nlohmann::json& j, ColumnProfile& v);
void to_json(nlohmann::json& j, const CorrelationEntry& v);
void from_json(const nlohmann::json& j, CorrelationEntry& v);
void to_json(nlohmann::json& j, const DataProfile& v);
void from_json(const nlohmann::json& j, DataProfile& v);

}  // namespace readiness
