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

#include "readiness/json_io.hpp"

namespace readiness {

std::string canonical_dump(const nlohmann::json& value) {
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string pretty_dump(const nlohmann::json& value) {
  return value.dump(2, ' ', false, nlohmann::json::error_handler_t::replace);
}

void to_json(nlohmann::json& j, const Digest& d) { j = d.hex(); }
void from_json(const nlohmann::json& j, Digest& d) { d = Digest::from_hex(j.get<std::string>()); }

void to_json(nlohmann::json& j, ValueType v) { j = std::string(to_string(v)); }
void from_json(const nlohmann::json& j, ValueType& v) {
  v = value_type_from_string(j.get<std::string>());
}
void to_json(nlohmann::json& j, DeclaredType v) { j = std::string(to_string(v)); }
void from_json(const nlohmann::json& j, DeclaredType& v) {
  v = declared_type_from_string(j.get<std::string>());
}
void to_json(nlohmann::json& j, Role v) { j = std::string(to_string(v)); }
void from_json(const nlohmann::json& j, Role& v) { v = role_from_string(j.get<std::string>()); }

}  // namespace readiness
