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

#include "readiness/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "readiness/error.hpp"

namespace readiness {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ca = static_cast<unsigned char>(a[i]);
    const auto cb = static_cast<unsigned char>(b[i]);
    if (std::tolower(ca) != std::tolower(cb)) return false;
  }
  return true;
}

std::optional<bool> parse_boolean(std::string_view token) {
  if (iequals(token, "true")) return true;
  if (iequals(token, "false")) return false;
  return std::nullopt;
}

std::optional<std::int64_t> parse_integer(std::string_view token) {
  if (token.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_real(std::string_view token) {
  if (token.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ptr != token.data() + token.size()) return std::nullopt;
  // Out-of-range values are still Real tokens; they read as +-inf.
  if (ec == std::errc::result_out_of_range) {
    return token.front() == '-' ? -HUGE_VAL : HUGE_VAL;
  }
  if (ec != std::errc()) return std::nullopt;
  return value;
}

bool needs_quoting(std::string_view field, char delimiter) {
  for (char c : field) {
    if (c == delimiter || c == '"' || c == '\n' || c == '\r') return true;
  }
  return false;
}

void append_field(std::string& out, std::string_view field, char delimiter) {
  if (!needs_quoting(field, delimiter)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

std::string serialize_columns(const std::vector<Column>& columns, std::size_t rows) {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out.push_back(',');
    append_field(out, columns[c].name, ',');
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out.push_back(',');
      append_field(out, cell_token(columns[c].cells[r]), ',');
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kBoolean: return "boolean";
    case ValueType::kInteger: return "integer";
    case ValueType::kReal: return "real";
    case ValueType::kText: return "text";
  }
  return "text";
}

std::string_view to_string(DeclaredType type) {
  switch (type) {
    case DeclaredType::kInteger: return "integer";
    case DeclaredType::kReal: return "real";
    case DeclaredType::kBoolean: return "boolean";
    case DeclaredType::kText: return "text";
    case DeclaredType::kCategorical: return "categorical";
  }
  return "text";
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kFeature: return "feature";
    case Role::kTarget: return "target";
    case Role::kProtected: return "protected";
    case Role::kIdentifier: return "identifier";
    case Role::kIgnore: return "ignore";
  }
  return "feature";
}

ValueType value_type_from_string(std::string_view text) {
  for (ValueType t : {ValueType::kBoolean, ValueType::kInteger, ValueType::kReal, ValueType::kText}) {
    if (to_string(t) == text) return t;
  }
  throw Error(ErrorCode::kInvalidParameterValue, "unknown value type '" + std::string(text) + "'");
}

DeclaredType declared_type_from_string(std::string_view text) {
  for (DeclaredType t : {DeclaredType::kInteger, DeclaredType::kReal, DeclaredType::kBoolean,
                         DeclaredType::kText, DeclaredType::kCategorical}) {
    if (to_string(t) == text) return t;
  }
  throw Error(ErrorCode::kInvalidParameterValue, "unknown column type '" + std::string(text) + "'");
}

Role role_from_string(std::string_view text) {
  for (Role r : {Role::kFeature, Role::kTarget, Role::kProtected, Role::kIdentifier, Role::kIgnore}) {
    if (to_string(r) == text) return r;
  }
  throw Error(ErrorCode::kInvalidParameterValue, "unknown column role '" + std::string(text) + "'");
}

std::optional<double> numeric_value(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::nullopt;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string cell_token(const Cell& cell) {
  struct Visitor {
    std::string operator()(const Missing&) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

DeclaredType Column::declared_type() const {
  if (categorical) return DeclaredType::kCategorical;
  switch (base_type) {
    case ValueType::kBoolean: return DeclaredType::kBoolean;
    case ValueType::kInteger: return DeclaredType::kInteger;
    case ValueType::kReal: return DeclaredType::kReal;
    case ValueType::kText: return DeclaredType::kText;
  }
  return DeclaredType::kText;
}

std::size_t Column::missing_count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), is_missing));
}

void IngestConfig::validate() const {
  if (!(type_dominance_threshold > 0.5 && type_dominance_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameterValue,
                "type_dominance_threshold must lie in (0.5, 1]");
  }
  if (delimiter == '"' || delimiter == '\n' || delimiter == '\r') {
    throw Error(ErrorCode::kInvalidParameterValue, "delimiter cannot be a quote or newline");
  }
}

Dataset::Dataset(std::vector<Column> columns, std::string source_path, std::string version_label,
                 std::vector<std::string> warnings)
    : columns_(std::move(columns)),
      source_path_(std::move(source_path)),
      version_label_(std::move(version_label)),
      warnings_(std::move(warnings)) {
  row_count_ = columns_.empty() ? 0 : columns_.front().cells.size();
  std::unordered_set<std::string> names;
  for (const Column& column : columns_) {
    if (column.name.empty()) {
      throw Error(ErrorCode::kParseError, "column names must be non-empty");
    }
    if (!names.insert(column.name).second) {
      throw Error(ErrorCode::kDuplicateColumnName, "duplicate column name '" + column.name + "'");
    }
    if (column.cells.size() != row_count_) {
      throw Error(ErrorCode::kParseError, "column '" + column.name + "' has " +
                                              std::to_string(column.cells.size()) +
                                              " cells, expected " + std::to_string(row_count_));
    }
  }
  digest_ = Digest::of(serialize_columns(columns_, row_count_));
}

std::optional<std::size_t> Dataset::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Dataset::column_index(std::string_view name) const {
  if (auto index = find_column(name)) return *index;
  throw Error(ErrorCode::kColumnNotFound, "no column named '" + std::string(name) + "'");
}

std::optional<std::size_t> Dataset::first_with_role(Role role) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].role == role) return i;
  }
  return std::nullopt;
}

ValueType classify_token(std::string_view token) {
  if (parse_boolean(token)) return ValueType::kBoolean;
  if (parse_integer(token)) return ValueType::kInteger;
  if (parse_real(token)) return ValueType::kReal;
  return ValueType::kText;
}

namespace {

struct ClassCounts {
  std::size_t boolean = 0;
  std::size_t integer = 0;
  std::size_t real_only = 0;
  std::size_t text = 0;

  void add(ValueType type) {
    switch (type) {
      case ValueType::kBoolean: ++boolean; break;
      case ValueType::kInteger: ++integer; break;
      case ValueType::kReal: ++real_only; break;
      case ValueType::kText: ++text; break;
    }
  }
  std::size_t total() const { return boolean + integer + real_only + text; }
  // Tokens parseable as the given type. Integers are also Reals.
  std::size_t parseable_as(ValueType type) const {
    switch (type) {
      case ValueType::kBoolean: return boolean;
      case ValueType::kInteger: return integer;
      case ValueType::kReal: return integer + real_only;
      case ValueType::kText: return total();
    }
    return 0;
  }
  // Dominant class: largest share, ties to the more specific type. Text here
  // means tokens that parse as nothing narrower.
  std::pair<ValueType, double> dominant() const {
    const std::size_t n = total();
    if (n == 0) return {ValueType::kText, 1.0};
    ValueType best = ValueType::kBoolean;
    std::size_t best_count = boolean;
    for (auto [type, count] : {std::pair{ValueType::kInteger, integer},
                               std::pair{ValueType::kReal, integer + real_only},
                               std::pair{ValueType::kText, text}}) {
      if (count > best_count) {
        best = type;
        best_count = count;
      }
    }
    return {best, static_cast<double>(best_count) / static_cast<double>(n)};
  }
};

}  // namespace

InferredType infer_column_type(const std::vector<std::string>& tokens, const IngestConfig& config) {
  ClassCounts counts;
  std::unordered_set<std::string_view> distinct;
  for (const std::string& token : tokens) {
    if (config.missing_tokens.contains(token)) continue;
    counts.add(classify_token(token));
    distinct.insert(token);
  }
  InferredType result;
  const auto [dominant, dominance] = counts.dominant();
  result.dominant_type = dominant;
  result.dominance = dominance;
  result.base_type = (counts.total() > 0 && dominance >= config.type_dominance_threshold)
                         ? dominant
                         : ValueType::kText;
  result.violations = counts.total() - counts.parseable_as(result.base_type);
  const double limit = std::max(20.0, 0.05 * static_cast<double>(tokens.size()));
  result.categorical = result.base_type != ValueType::kReal &&
                       static_cast<double>(distinct.size()) <= limit;
  return result;
}

std::vector<InferredType> infer_column_types(const std::vector<std::vector<std::string>>& tokens,
                                             const IngestConfig& config) {
  std::vector<InferredType> out;
  out.reserve(tokens.size());
  for (const auto& column : tokens) out.push_back(infer_column_type(column, config));
  return out;
}

Cell parse_cell(std::string_view token, ValueType base_type) {
  switch (base_type) {
    case ValueType::kBoolean:
      if (auto b = parse_boolean(token)) return *b;
      break;
    case ValueType::kInteger:
      if (auto i = parse_integer(token)) return *i;
      break;
    case ValueType::kReal:
      if (auto d = parse_real(token)) {
        if (!std::isfinite(*d)) return Missing{};
        return *d;
      }
      break;
    case ValueType::kText:
      break;
  }
  return std::string(token);
}

void refresh_type_stats(Column& column) {
  ClassCounts counts;
  std::size_t violations = 0;
  for (const Cell& cell : column.cells) {
    if (is_missing(cell)) continue;
    counts.add(classify_token(cell_token(cell)));
    if (column.base_type != ValueType::kText && std::holds_alternative<std::string>(cell)) {
      ++violations;
    }
  }
  const auto [dominant, dominance] = counts.dominant();
  column.dominant_type = dominant;
  column.dominance = dominance;
  column.type_violation_count = violations;
}

std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kParseError, "row " + std::to_string(record_line) + ": " + what);
  };
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (!records.empty() && record.size() != records.front().size()) {
      fail("expected " + std::to_string(records.front().size()) + " fields, found " +
           std::to_string(record.size()));
    }
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < n) {
    record_line = line;
    // One record per iteration.
    while (true) {
      if (i < n && text[i] == '"') {
        ++i;
        while (true) {
          if (i >= n) fail("unterminated quoted field");
          const char c = text[i];
          if (c == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        if (i < n && text[i] != delimiter && text[i] != '\n' &&
            !(text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
          fail("unexpected character after closing quote");
        }
      } else {
        while (i < n && text[i] != delimiter && text[i] != '\n') {
          if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') break;
          if (text[i] == '"') fail("quote inside unquoted field");
          field.push_back(text[i]);
          ++i;
        }
      }
      if (i < n && text[i] == delimiter) {
        record.push_back(std::move(field));
        field.clear();
        ++i;
        continue;
      }
      if (i < n && text[i] == '\r') ++i;
      if (i < n && text[i] == '\n') {
        ++i;
        ++line;
      }
      end_record();
      break;
    }
  }
  return records;
}

Dataset dataset_from_text(std::string_view text, const IngestConfig& config,
                          std::string source_path) {
  config.validate();
  auto records = parse_delimited(text, config.delimiter);
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no rows found");
  }
  const std::size_t width = records.front().size();
  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (config.has_header) {
    names = std::move(records.front());
    first_data = 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) names.push_back("column_" + std::to_string(c + 1));
  }
  const std::size_t rows = records.size() - first_data;
  if (rows == 0) {
    throw Error(ErrorCode::kEmptyDataset, "file contains a header row but no data rows");
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const std::string& name : names) {
      if (!seen.insert(name).second) {
        throw Error(ErrorCode::kDuplicateColumnName, "duplicate column name '" + name + "'");
      }
    }
  }
  for (const auto& [name, role] : config.roles) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error(ErrorCode::kColumnNotFound, "role assigned to unknown column '" + name + "'");
    }
  }
  for (const auto& [name, type] : config.type_overrides) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error(ErrorCode::kColumnNotFound, "type override for unknown column '" + name + "'");
    }
  }

  std::vector<std::string> warnings;
  std::vector<Column> columns(width);
  std::vector<std::string> tokens(rows);
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < rows; ++r) tokens[r] = std::move(records[first_data + r][c]);
    Column& column = columns[c];
    column.name = names[c];
    if (auto it = config.roles.find(column.name); it != config.roles.end()) column.role = it->second;

    InferredType inferred = infer_column_type(tokens, config);
    column.base_type = inferred.base_type;
    column.categorical = inferred.categorical;
    if (auto it = config.type_overrides.find(column.name); it != config.type_overrides.end()) {
      switch (it->second) {
        case DeclaredType::kCategorical: column.categorical = true; break;
        case DeclaredType::kInteger: column.base_type = ValueType::kInteger; break;
        case DeclaredType::kReal: column.base_type = ValueType::kReal; column.categorical = false; break;
        case DeclaredType::kBoolean: column.base_type = ValueType::kBoolean; break;
        case DeclaredType::kText: column.base_type = ValueType::kText; break;
      }
    }
    if (column.role == Role::kTarget || column.role == Role::kProtected) column.categorical = true;

    column.cells.reserve(rows);
    std::size_t non_finite = 0;
    for (const std::string& token : tokens) {
      if (config.missing_tokens.contains(token)) {
        column.cells.emplace_back(Missing{});
        continue;
      }
      Cell cell = parse_cell(token, column.base_type);
      if (is_missing(cell)) ++non_finite;
      column.cells.push_back(std::move(cell));
    }
    if (non_finite > 0) {
      warnings.push_back("column '" + column.name + "': " + std::to_string(non_finite) +
                         " non-finite value(s) read as missing");
    }
    refresh_type_stats(column);
  }
  return Dataset(std::move(columns), std::move(source_path), {}, std::move(warnings));
}

Dataset load_dataset(const std::filesystem::path& path, const IngestConfig& config) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, "cannot open '" + path.string() + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return dataset_from_text(buffer.str(), config, path.string());
}

std::string canonical_serialization(const Dataset& dataset) {
  return serialize_columns(dataset.columns(), dataset.row_count());
}

Digest canonical_hash(const Dataset& dataset) {
  return Digest::of(canonical_serialization(dataset));
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  const std::string bytes = canonical_serialization(dataset);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
}

}  // namespace readiness
