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

#include <filesystem>
#include <string_view>

#include "readiness/dataset.hpp"
#include "readiness/profiler.hpp"
#include "readiness/quality.hpp"

namespace readiness {

// Settings file shared by every command: `ingest`, `assess` and `profile`
// mappings, all optional.
struct RunSettings {
  IngestConfig ingest;
  AssessConfig assess;
  ProfileOptions profile;
};

// Throws ParseError on YAML syntax and InvalidParameterValue on bad values.
RunSettings parse_settings(std::string_view text);
// Throws FileNotFound plus the parse_settings errors.
RunSettings load_settings(const std::filesystem::path& path);

}  // namespace readiness
