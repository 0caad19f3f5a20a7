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
#include <string>

namespace readiness {

// Current UTC time as RFC 3339 ("2026-01-02T03:04:05Z"). Honors
// SOURCE_DATE_EPOCH so pipeline runs can be made byte-reproducible.
std::string utc_now();

std::string format_rfc3339(std::int64_t unix_seconds);

}  // namespace readiness
