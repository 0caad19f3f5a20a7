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

#include "readiness/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "readiness/clock.hpp"
#include "readiness/json_io.hpp"
#include "readiness/stats.hpp"

namespace readiness {

namespace {

std::vector<ValueCount> sorted_counts(const std::unordered_map<std::string, std::size_t>& counts) {
  std::vector<ValueCount> out;
  out.reserve(counts.size());
  for (const auto& [value, count] : counts) out.push_back({value, count});
  std::sort(out.begin(), out.end(), [](const ValueCount& a, const ValueCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.value < b.value;
  });
  return out;
}

Histogram numeric_histogram(const std::vector<double>& values, double min, double max,
                            std::size_t bins) {
  Histogram h;
  if (min == max) {
    h.edges = {min - 0.5, min + 0.5};
    h.counts = {values.size()};
    return h;
  }
  bins = std::max<std::size_t>(bins, 1);
  const double width = (max - min) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i < bins; ++i) h.edges[i] = min + static_cast<double>(i) * width;
  h.edges[bins] = max;
  h.counts.assign(bins, 0);
  for (double x : values) {
    auto index = static_cast<std::size_t>(std::floor((x - min) / width));
    h.counts[std::min(index, bins - 1)] += 1;
  }
  return h;
}

}  // namespace

std::string_view to_string(CorrelationMethod method) {
  return method == CorrelationMethod::kPearson ? "pearson" : "cramers_v";
}

std::size_t DataProfile::missing_cells() const {
  std::size_t total = 0;
  for (const ColumnProfile& c : columns) total += c.missing_count;
  return total;
}

const ColumnProfile* DataProfile::find(std::string_view name) const {
  for (const ColumnProfile& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string generalize_token(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= '0' && u <= '9') {
      c = 'D';
    } else if ((u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z')) {
      c = 'A';
    }
  }
  return out;
}

PatternSummary detect_pattern(const Column& column) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const Cell& cell : column.cells) {
    if (is_missing(cell)) continue;
    counts[generalize_token(cell_token(cell))] += 1;
    ++total;
  }
  PatternSummary best;
  std::size_t best_count = 0;
  for (const auto& [pattern, count] : counts) {
    if (count > best_count) {
      best = {pattern, 0};
      best_count = count;
    }
  }
  if (total > 0) best.coverage = static_cast<double>(best_count) / static_cast<double>(total);
  return best;
}

CorrelationKind correlation_kind(const Column& column) {
  switch (column.role) {
    case Role::kIdentifier:
    case Role::kIgnore:
      return CorrelationKind::kNone;
    case Role::kTarget:
    case Role::kProtected:
      return CorrelationKind::kCategorical;
    case Role::kFeature:
      break;
  }
  if (column.is_numeric()) return CorrelationKind::kNumeric;
  if (column.categorical) return CorrelationKind::kCategorical;
  return CorrelationKind::kNone;
}

ColumnProfile profile_column(const Column& column, std::size_t row_count,
                             const ProfileOptions& options) {
  ColumnProfile p;
  p.name = column.name;
  p.declared_type = column.declared_type();
  p.base_type = column.base_type;
  p.role = column.role;
  p.type_violation_count = column.type_violation_count;
  p.dominant_type = column.dominant_type;
  p.dominance = column.dominance;

  std::unordered_map<std::string, std::size_t> token_counts;
  std::vector<double> values;
  for (const Cell& cell : column.cells) {
    if (is_missing(cell)) {
      ++p.missing_count;
      continue;
    }
    token_counts[cell_token(cell)] += 1;
    if (auto v = numeric_value(cell)) values.push_back(*v);
  }
  p.missing_fraction =
      row_count == 0 ? 0.0 : static_cast<double>(p.missing_count) / static_cast<double>(row_count);
  p.unique_count = token_counts.size();

  if (column.is_numeric() && !values.empty()) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    NumericSummary s;
    s.min = sorted.front();
    s.max = sorted.back();
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(ss / static_cast<double>(values.size()));
    s.q1 = stats::quantile_sorted(sorted, 0.25);
    s.median = stats::quantile_sorted(sorted, 0.5);
    s.q3 = stats::quantile_sorted(sorted, 0.75);
    p.numeric = s;
    p.histogram = numeric_histogram(values, s.min, s.max, options.histogram_bins);
  }

  if (!column.is_numeric() || column.categorical) {
    auto counts = sorted_counts(token_counts);
    if (column.categorical && !column.is_numeric()) {
      Histogram h;
      for (const ValueCount& vc : counts) {
        h.categories.push_back(vc.value);
        h.counts.push_back(vc.count);
      }
      p.histogram = std::move(h);
    }
    if (counts.size() > options.top_k) counts.resize(options.top_k);
    p.top_values = std::move(counts);
  }
  if (!column.is_numeric()) p.pattern = detect_pattern(column);
  return p;
}

DataProfile profile_dataset(const Dataset& dataset, const ProfileOptions& options) {
  DataProfile profile;
  profile.dataset_digest = dataset.digest();
  profile.row_count = dataset.row_count();
  profile.column_count = dataset.column_count();
  profile.generated_at = utc_now();
  for (const Column& column : dataset.columns()) {
    profile.columns.push_back(profile_column(column, dataset.row_count(), options));
  }

  const auto& columns = dataset.columns();
  std::vector<CorrelationKind> kinds;
  for (const Column& c : columns) kinds.push_back(correlation_kind(c));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (kinds[i] == CorrelationKind::kNone) continue;
    for (std::size_t j = i + 1; j < columns.size(); ++j) {
      if (kinds[j] != kinds[i]) continue;
      CorrelationEntry entry;
      entry.column_a = columns[i].name;
      entry.column_b = columns[j].name;
      if (kinds[i] == CorrelationKind::kNumeric) {
        entry.method = CorrelationMethod::kPearson;
        std::vector<double> x, y;
        for (std::size_t r = 0; r < dataset.row_count(); ++r) {
          auto a = numeric_value(columns[i].cells[r]);
          auto b = numeric_value(columns[j].cells[r]);
          if (!a || !b) continue;
          x.push_back(*a);
          y.push_back(*b);
        }
        entry.observations = x.size();
        entry.value = stats::pearson(x, y);
      } else {
        entry.method = CorrelationMethod::kCramersV;
        std::vector<std::string> a, b;
        for (std::size_t r = 0; r < dataset.row_count(); ++r) {
          if (is_missing(columns[i].cells[r]) || is_missing(columns[j].cells[r])) continue;
          a.push_back(cell_token(columns[i].cells[r]));
          b.push_back(cell_token(columns[j].cells[r]));
        }
        entry.observations = a.size();
        entry.value = stats::cramers_v(a, b);
      }
      profile.correlations.push_back(std::move(entry));
    }
  }
  return profile;
}

void to_json(nlohmann::json& j, const NumericSummary& v) {
  j = {{"min", v.min},       {"max", v.max}, {"mean", v.mean}, {"median", v.median},
       {"std_dev", v.std_dev}, {"q1", v.q1},   {"q3", v.q3}};
}

void from_json(const nlohmann::json& j, NumericSummary& v) {
  j.at("min").get_to(v.min);
  j.at("max").get_to(v.max);
  j.at("mean").get_to(v.mean);
  j.at("median").get_to(v.median);
  j.at("std_dev").get_to(v.std_dev);
  j.at("q1").get_to(v.q1);
  j.at("q3").get_to(v.q3);
}

void to_json(nlohmann::json& j, const Histogram& v) {
  j = nlohmann::json::object();
  if (v.is_numeric()) {
    j["kind"] = "numeric";
    j["edges"] = v.edges;
  } else {
    j["kind"] = "categorical";
    j["categories"] = v.categories;
  }
  j["counts"] = v.counts;
}

void from_json(const nlohmann::json& j, Histogram& v) {
  if (j.at("kind").get<std::string>() == "numeric") {
    j.at("edges").get_to(v.edges);
  } else {
    j.at("categories").get_to(v.categories);
  }
  j.at("counts").get_to(v.counts);
}

void to_json(nlohmann::json& j, const ColumnProfile& v) {
  j = nlohmann::json::object();
  j["name"] = v.name;
  j["declared_type"] = v.declared_type;
  j["base_type"] = v.base_type;
  j["role"] = v.role;
  j["missing_count"] = v.missing_count;
  j["missing_fraction"] = v.missing_fraction;
  j["unique_count"] = v.unique_count;
  j["constraints"] = {{"type_violation_count", v.type_violation_count},
                      {"dominant_type", v.dominant_type},
                      {"dominance", v.dominance}};
  put_optional(j, "numeric", v.numeric);
  nlohmann::json top = nlohmann::json::array();
  for (const ValueCount& vc : v.top_values) top.push_back({{"value", vc.value}, {"count", vc.count}});
  j["top_values"] = std::move(top);
  if (v.pattern) {
    j["pattern"] = {{"pattern", v.pattern->pattern}, {"coverage", v.pattern->coverage}};
  } else {
    j["pattern"] = nullptr;
  }
  put_optional(j, "histogram", v.histogram);
}

void from_json(const nlohmann::json& j, ColumnProfile& v) {
  j.at("name").get_to(v.name);
  j.at("declared_type").get_to(v.declared_type);
  j.at("base_type").get_to(v.base_type);
  j.at("role").get_to(v.role);
  j.at("missing_count").get_to(v.missing_count);
  j.at("missing_fraction").get_to(v.missing_fraction);
  j.at("unique_count").get_to(v.unique_count);
  const auto& constraints = j.at("constraints");
  constraints.at("type_violation_count").get_to(v.type_violation_count);
  constraints.at("dominant_type").get_to(v.dominant_type);
  constraints.at("dominance").get_to(v.dominance);
  v.numeric = get_optional<NumericSummary>(j, "numeric");
  v.top_values.clear();
  for (const auto& item : j.at("top_values")) {
    v.top_values.push_back({item.at("value").get<std::string>(), item.at("count").get<std::size_t>()});
  }
  if (const auto& pattern = j.at("pattern"); !pattern.is_null()) {
    v.pattern = PatternSummary{pattern.at("pattern").get<std::string>(),
                               pattern.at("coverage").get<double>()};
  } else {
    v.pattern.reset();
  }
  v.histogram = get_optional<Histogram>(j, "histogram");
}

void to_json(nlohmann::json& j, const CorrelationEntry& v) {
  j = {{"column_a", v.column_a},
       {"column_b", v.column_b},
       {"method", std::string(to_string(v.method))},
       {"defined", v.defined()},
       {"observations", v.observations}};
  put_optional(j, "value", v.value);
}

void from_json(const nlohmann::json& j, CorrelationEntry& v) {
  j.at("column_a").get_to(v.column_a);
  j.at("column_b").get_to(v.column_b);
  v.method = j.at("method").get<std::string>() == "pearson" ? CorrelationMethod::kPearson
                                                            : CorrelationMethod::kCramersV;
  j.at("observations").get_to(v.observations);
  v.value = get_optional<double>(j, "value");
}

void to_json(nlohmann::json& j, const DataProfile& v) {
  j = {{"dataset_digest", v.dataset_digest},
       {"row_count", v.row_count},
       {"column_count", v.column_count},
       {"columns", v.columns},
       {"correlations", v.correlations},
       {"generated_at", v.generated_at}};
}

void from_json(const nlohmann::json& j, DataProfile& v) {
  j.at("dataset_digest").get_to(v.dataset_digest);
  j.at("row_count").get_to(v.row_count);
  j.at("column_count").get_to(v.column_count);
  j.at("columns").get_to(v.columns);
  j.at("correlations").get_to(v.correlations);
  j.at("generated_at").get_to(v.generated_at);
}

}  // namespace readiness
