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

#include <string_view>

#include "json.hpp"
#include "readiness/error.hpp"

namespace readiness {

// Converts a YAML document to JSON. Plain scalars that read as integers,
// reals, booleans or null become those JSON types; quoted scalars stay text.
// Syntax errors throw Error(syntax_error) with the line and column.
nlohmann::json yaml_to_json(std::string_view text, ErrorCode syntax_error, std::string_view what);

}  // namespace readiness
