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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "readiness/dataset.hpp"
#include "readiness/digest.hpp"
#include "readiness/step.hpp"

namespace readiness {

enum class Operation { kIngest, kProfile, kAssess, kRemediationStep, kReportRender };

std::string_view to_string(Operation operation);
// Throws Error(kParseError).
Operation operation_from_string(std::string_view text);

struct LineageEntry {
  std::uint64_t entry_id = 0;
  std::string timestamp;
  Actor actor;
  Operation operation = Operation::kIngest;
  nlohmann::json operation_detail = nlohmann::json::object();
  Digest input_digest;
  Digest output_digest;
  Digest prev_entry_hash;
  Digest entry_hash;

  bool operator==(const LineageEntry&) const = default;
};

// Canonical JSON of every field except entry_hash.
nlohmann::json entry_body(const LineageEntry& entry);
Digest compute_entry_hash(const LineageEntry& entry);
// One canonical JSON line, without the trailing newline.
std::string serialize_entry(const LineageEntry& entry);
// Throws Error(kParseError).
LineageEntry parse_entry(std::string_view line);

void to_json(nlohmann::json& j, const LineageEntry& entry);
void from_json(const nlohmann::json& j, LineageEntry& entry);

struct VerifyResult {
  bool ok = true;
  std::size_t entries = 0;                   // lines examined
  std::optional<std::uint64_t> broken_entry;  // 1-based position of the first bad line
  std::string reason;
};

// Checks every line of a ledger text: canonical form, dense ids, chain links
// and recomputed hashes. Never throws on content.
VerifyResult verify_ledger_text(std::string_view text);

// Append-only, hash-chained JSON Lines ledger. Either backed by a file or
// held in memory.
class LineageLedger {
 public:
  LineageLedger() = default;  // in memory
  explicit LineageLedger(std::filesystem::path path);

  bool file_backed() const { return path_.has_value(); }
  const std::optional<std::filesystem::path>& path() const { return path_; }

  // Verifies the existing chain, then writes and flushes the new entry.
  // Throws ChainBroken or IoError.
  LineageEntry append(const Actor& actor, Operation operation, nlohmann::json detail,
                      const Digest& input_digest, const Digest& output_digest);

  // Throws IoError when the file exists but cannot be read.
  VerifyResult verify() const;

  // Parsed entries. Throws ChainBroken when verification fails.
  std::vector<LineageEntry> entries() const;

  // Raw ledger text ("" for an absent file).
  std::string text() const;

 private:
  std::optional<std::filesystem::path> path_;
  std::string memory_;
};

struct ReplayResult {
  Dataset dataset;
  std::size_t steps_applied = 0;
  std::optional<std::uint64_t> last_entry;  // id of the last remediation entry applied
};

// Re-applies recorded remediation steps to the baseline, checking each
// recorded digest. Entries with id above `upto` are ignored.
// Throws ChainBroken, BaselineMismatch or ReplayDivergence.
ReplayResult replay(const Dataset& baseline, const LineageLedger& ledger,
                    std::optional<std::uint64_t> upto = std::nullopt);

}  // namespace readiness
