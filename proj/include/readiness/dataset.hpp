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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "readiness/digest.hpp"

namespace readiness {

// Base value types, most specific first.
enum class ValueType { kBoolean, kInteger, kReal, kText };

// What a column is reported as. Categorical is a tag over a base type.
enum class DeclaredType { kInteger, kReal, kBoolean, kText, kCategorical };

enum class Role { kFeature, kTarget, kProtected, kIdentifier, kIgnore };

std::string_view to_string(ValueType type);
std::string_view to_string(DeclaredType type);
std::string_view to_string(Role role);
ValueType value_type_from_string(std::string_view text);
DeclaredType declared_type_from_string(std::string_view text);
Role role_from_string(std::string_view text);

struct Missing {
  bool operator==(const Missing&) const = default;
};

// Missing | Integer | Real | Boolean | Text. A Real is always finite.
using Cell = std::variant<Missing, std::int64_t, double, bool, std::string>;

inline bool is_missing(const Cell& cell) { return std::holds_alternative<Missing>(cell); }

// Integer or Real cells as double; nullopt otherwise.
std::optional<double> numeric_value(const Cell& cell);

// The canonical text of a cell: "" for Missing, shortest round-trip decimal
// for Real, "true"/"false" for Boolean.
std::string cell_token(const Cell& cell);

// Shortest decimal string that round-trips the binary64 value.
std::string format_real(double value);

struct Column {
  std::string name;
  ValueType base_type = ValueType::kText;
  bool categorical = false;
  Role role = Role::kFeature;
  std::vector<Cell> cells;

  // Non-missing cells whose token did not parse as base_type. Such cells are
  // kept as Text so the source token survives.
  std::size_t type_violation_count = 0;
  // Most common token class and the fraction of non-missing tokens in it.
  ValueType dominant_type = ValueType::kText;
  double dominance = 1.0;

  DeclaredType declared_type() const;
  bool is_numeric() const {
    return base_type == ValueType::kInteger || base_type == ValueType::kReal;
  }
  std::size_t missing_count() const;
  std::size_t non_missing_count() const { return cells.size() - missing_count(); }
};

struct IngestConfig {
  std::set<std::string> missing_tokens{"", "NA", "N/A", "null", "NaN", "?"};
  char delimiter = ',';
  bool has_header = true;
  double type_dominance_threshold = 0.95;
  std::map<std::string, Role> roles;
  std::map<std::string, DeclaredType> type_overrides;

  // Throws Error(kInvalidParameterValue).
  void validate() const;
};

// Immutable typed table. Every transformation produces a new Dataset.
class Dataset {
 public:
  // Validates shape and name invariants, then computes the digest.
  Dataset(std::vector<Column> columns, std::string source_path = {},
          std::string version_label = {}, std::vector<std::string> warnings = {});

  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_.at(index); }
  std::optional<std::size_t> find_column(std::string_view name) const;
  // Throws Error(kColumnNotFound).
  std::size_t column_index(std::string_view name) const;
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  const std::string& source_path() const { return source_path_; }
  const std::string& version_label() const { return version_label_; }
  const Digest& digest() const { return digest_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // First column with the given role, if any.
  std::optional<std::size_t> first_with_role(Role role) const;

 private:
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
  std::string source_path_;
  std::string version_label_;
  std::vector<std::string> warnings_;
  Digest digest_;
};

// Result of type inference for a single column.
struct InferredType {
  ValueType base_type = ValueType::kText;
  bool categorical = false;
  std::size_t violations = 0;
  ValueType dominant_type = ValueType::kText;
  double dominance = 1.0;

  bool operator==(const InferredType&) const = default;
};

// Most specific class a single token parses as (missing tokens excluded by caller).
ValueType classify_token(std::string_view token);

// Infers one column from its raw tokens (missing tokens are skipped).
InferredType infer_column_type(const std::vector<std::string>& tokens, const IngestConfig& config);
std::vector<InferredType> infer_column_types(const std::vector<std::vector<std::string>>& tokens,
                                             const IngestConfig& config);

// Parses a token as the given base type. Tokens that do not parse become Text;
// non-finite Reals become Missing.
Cell parse_cell(std::string_view token, ValueType base_type);

// Recomputes type_violation_count, dominant_type and dominance from the
// current cells, keeping the declared schema.
void refresh_type_stats(Column& column);

// Parses delimited text into raw records. Throws Error(kParseError) with the
// 1-based line number on malformed quoting or ragged rows.
std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter);

Dataset load_dataset(const std::filesystem::path& path, const IngestConfig& config = {});
Dataset dataset_from_text(std::string_view text, const IngestConfig& config = {},
                          std::string source_path = {});

// Bit-exact canonical CSV: UTF-8, LF, header row, minimal RFC-4180 quoting.
std::string canonical_serialization(const Dataset& dataset);
Digest canonical_hash(const Dataset& dataset);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace readiness
