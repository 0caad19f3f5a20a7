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
#include <string_view>

#include "json.hpp"
#include "readiness/dataset.hpp"
#include "readiness/digest.hpp"

namespace readiness {

// Sorted keys, no insignificant whitespace, invalid UTF-8 replaced. The form
// every hashed JSON payload takes.
std::string canonical_dump(const nlohmann::json& value);

// Two-space indented, sorted keys. Deterministic for identical values.
std::string pretty_dump(const nlohmann::json& value);

void to_json(nlohmann::json& j, const Digest& d);
void from_json(const nlohmann::json& j, Digest& d);
void to_json(nlohmann::json& j, ValueType v);
void from_json(const nlohmann::json& j, ValueType& v);
void to_json(nlohmann::json& j, DeclaredType v);
void from_json(const nlohmann::json& j, DeclaredType& v);
void to_json(nlohmann::json& j, Role v);
void from_json(const nlohmann::json& j, Role& v);

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
  if (value) {
    j[key] = *value;
  } else {
    j[key] = nullptr;
  }
}

template <typename T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->template get<T>();
}

}  // namespace readiness
