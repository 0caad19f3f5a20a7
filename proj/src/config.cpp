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

#include "readiness/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "readiness/error.hpp"
#include "readiness/yaml_io.hpp"

namespace readiness {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidParameterValue, message);
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) invalid(where + " must be a mapping");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      invalid("unknown setting '" + where + "." + key + "'");
    }
  }
}

// Scalars in token positions may arrive as numbers or booleans.
std::string token_of(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_null()) return {};
  invalid(where + " must be a single value");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where + " must be a number");
  return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  invalid(where + " must be a non-negative integer");
}

void read_ingest(const json& j, IngestConfig& c) {
  check_keys(j, {"delimiter", "has_header", "missing_tokens", "type_dominance_threshold", "roles", "types"},
             "ingest");
  if (j.contains("delimiter")) {
    const std::string d = token_of(j["delimiter"], "ingest.delimiter");
    if (d.size() != 1) invalid("ingest.delimiter must be a single character");
    c.delimiter = d[0];
  }
  if (j.contains("has_header")) {
    if (!j["has_header"].is_boolean()) invalid("ingest.has_header must be true or false");
    c.has_header = j["has_header"].get<bool>();
  }
  if (j.contains("missing_tokens")) {
    if (!j["missing_tokens"].is_array()) invalid("ingest.missing_tokens must be a list");
    c.missing_tokens.clear();
    for (const json& t : j["missing_tokens"]) c.missing_tokens.insert(token_of(t, "ingest.missing_tokens"));
  }
  if (j.contains("type_dominance_threshold")) {
    c.type_dominance_threshold = number(j["type_dominance_threshold"], "ingest.type_dominance_threshold");
  }
  if (j.contains("roles") && !j["roles"].is_null()) {
    if (!j["roles"].is_object()) invalid("ingest.roles must map column names to roles");
    for (const auto& [name, role] : j["roles"].items()) {
      c.roles[name] = role_from_string(token_of(role, "ingest.roles." + name));
    }
  }
  if (j.contains("types") && !j["types"].is_null()) {
    if (!j["types"].is_object()) invalid("ingest.types must map column names to types");
    for (const auto& [name, type] : j["types"].items()) {
      c.type_overrides[name] = declared_type_from_string(token_of(type, "ingest.types." + name));
    }
  }
  c.validate();
}

void read_assess(const json& j, AssessConfig& c) {
  check_keys(j,
             {"correlation_threshold", "outlier_iqr_multiplier", "label_noise_k", "label_noise_threshold",
              "disparate_impact_threshold", "favorable_value", "dimensions", "weights", "seed"},
             "assess");
  if (j.contains("correlation_threshold")) {
    c.correlation_threshold = number(j["correlation_threshold"], "assess.correlation_threshold");
  }
  if (j.contains("outlier_iqr_multiplier")) {
    c.outlier_iqr_multiplier = number(j["outlier_iqr_multiplier"], "assess.outlier_iqr_multiplier");
  }
  if (j.contains("label_noise_k")) c.label_noise_k = count(j["label_noise_k"], "assess.label_noise_k");
  if (j.contains("label_noise_threshold")) {
    c.label_noise_threshold = number(j["label_noise_threshold"], "assess.label_noise_threshold");
  }
  if (j.contains("disparate_impact_threshold")) {
    c.disparate_impact_threshold = number(j["disparate_impact_threshold"], "assess.disparate_impact_threshold");
  }
  if (j.contains("favorable_value") && !j["favorable_value"].is_null()) {
    c.favorable_value = token_of(j["favorable_value"], "assess.favorable_value");
  }
  if (j.contains("dimensions")) {
    if (!j["dimensions"].is_array()) invalid("assess.dimensions must be a list");
    c.dimensions.clear();
    for (const json& d : j["dimensions"]) {
      const Dimension dim = dimension_from_string(token_of(d, "assess.dimensions"));
      if (!c.enabled(dim)) c.dimensions.push_back(dim);
    }
    std::sort(c.dimensions.begin(), c.dimensions.end());
  }
  if (j.contains("weights") && !j["weights"].is_null()) {
    if (!j["weights"].is_object()) invalid("assess.weights must map dimensions to numbers");
    for (const auto& [name, w] : j["weights"].items()) {
      c.weights[dimension_from_string(name)] = number(w, "assess.weights." + name);
    }
  }
  if (j.contains("seed")) c.seed = count(j["seed"], "assess.seed");
  c.validate();
}

void read_profile(const json& j, ProfileOptions& o) {
  check_keys(j, {"histogram_bins", "top_k"}, "profile");
  if (j.contains("histogram_bins")) o.histogram_bins = count(j["histogram_bins"], "profile.histogram_bins");
  if (j.contains("top_k")) o.top_k = count(j["top_k"], "profile.top_k");
  if (o.histogram_bins == 0) invalid("profile.histogram_bins must be positive");
}

}  // namespace

RunSettings parse_settings(std::string_view text) {
  const json root = yaml_to_json(text, ErrorCode::kParseError, "config");
  RunSettings s;
  if (root.is_null()) return s;
  check_keys(root, {"ingest", "assess", "profile"}, "config");
  if (root.contains("ingest") && !root["ingest"].is_null()) read_ingest(root["ingest"], s.ingest);
  if (root.contains("assess") && !root["assess"].is_null()) read_assess(root["assess"], s.assess);
  if (root.contains("profile") && !root["profile"].is_null()) read_profile(root["profile"], s.profile);
  return s;
}

RunSettings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_settings(buffer.str());
}

}  // namespace readiness
