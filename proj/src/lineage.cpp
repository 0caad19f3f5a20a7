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

#include "readiness/lineage.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "readiness/clock.hpp"
#include "readiness/error.hpp"
#include "readiness/json_io.hpp"
#include "readiness/remediation.hpp"

namespace readiness {

namespace {

using nlohmann::json;

constexpr std::pair<Operation, std::string_view> kOperationNames[] = {
    {Operation::kIngest, "ingest"},
    {Operation::kProfile, "profile"},
    {Operation::kAssess, "assess"},
    {Operation::kRemediationStep, "remediation_step"},
    {Operation::kReportRender, "report_render"},
};

[[noreturn]] void io_failure(const std::filesystem::path& path, const char* action) {
  throw Error(ErrorCode::kIoError,
              std::string("cannot ") + action + " ledger '" + path.string() + "': " + std::strerror(errno));
}

// Exclusive advisory lock on an open ledger file, released on scope exit.
class LockedFile {
 public:
  explicit LockedFile(const std::filesystem::path& path) : path_(path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) io_failure(path, "open");
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      io_failure(path, "lock");
    }
  }
  ~LockedFile() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;

  std::string read_all() const {
    std::string text;
    char buffer[1 << 16];
    off_t offset = 0;
    for (;;) {
      const ssize_t n = ::pread(fd_, buffer, sizeof buffer, offset);
      if (n < 0) io_failure(path_, "read");
      if (n == 0) break;
      text.append(buffer, static_cast<std::size_t>(n));
      offset += n;
    }
    return text;
  }

  void append(const std::string& line) const {
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        io_failure(path_, "write");
      }
      written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd_) != 0) io_failure(path_, "flush");
  }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

struct ParsedLedger {
  VerifyResult result;
  std::vector<LineageEntry> entries;
};

ParsedLedger parse_ledger(std::string_view text) {
  ParsedLedger out;
  Digest previous;
  std::string last_timestamp;
  std::size_t position = 0;
  std::uint64_t line_no = 0;
  auto broken = [&](std::string reason) {
    out.result.ok = false;
    out.result.broken_entry = line_no;
    out.result.reason = std::move(reason);
  };
  while (position < text.size()) {
    ++line_no;
    out.result.entries = line_no;
    const std::size_t end = text.find('\n', position);
    if (end == std::string_view::npos) {
      broken("line is not newline-terminated");
      return out;
    }
    const std::string_view line = text.substr(position, end - position);
    position = end + 1;
    LineageEntry entry;
    try {
      entry = json::parse(line).get<LineageEntry>();
    } catch (const std::exception& e) {
      broken(std::string("unparseable entry: ") + e.what());
      return out;
    }
    // Byte-exact round trip: rejects reordered keys, whitespace and
    // alternative spellings such as upper-case hex digits.
    if (serialize_entry(entry) != line) {
      broken("line is not in canonical form");
      return out;
    }
    if (entry.entry_id != line_no) {
      broken("entry_id " + std::to_string(entry.entry_id) + " out of sequence");
      return out;
    }
    if (entry.prev_entry_hash != previous) {
      broken("prev_entry_hash does not match the preceding entry");
      return out;
    }
    if (compute_entry_hash(entry) != entry.entry_hash) {
      broken("entry_hash does not match the entry contents");
      return out;
    }
    if (entry.actor.name.empty()) {
      broken("entry has no actor name");
      return out;
    }
    if (entry.timestamp < last_timestamp) {
      broken("timestamp earlier than the preceding entry");
      return out;
    }
    last_timestamp = entry.timestamp;
    previous = entry.entry_hash;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read ledger '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

LineageEntry make_entry(const std::vector<LineageEntry>& existing, const Actor& actor,
                        Operation operation, json detail, const Digest& input, const Digest& output) {
  if (actor.name.empty()) throw Error(ErrorCode::kInvalidParameterValue, "actor name must be non-empty");
  if (detail.is_null()) detail = json::object();
  if (!detail.is_object()) throw Error(ErrorCode::kInvalidParameterValue, "operation_detail must be an object");
  LineageEntry entry;
  entry.entry_id = existing.size() + 1;
  entry.timestamp = utc_now();
  if (!existing.empty() && entry.timestamp < existing.back().timestamp) {
    entry.timestamp = existing.back().timestamp;
  }
  entry.actor = actor;
  entry.operation = operation;
  entry.operation_detail = std::move(detail);
  entry.input_digest = input;
  entry.output_digest = output;
  if (!existing.empty()) entry.prev_entry_hash = existing.back().entry_hash;
  entry.entry_hash = compute_entry_hash(entry);
  return entry;
}

[[noreturn]] void chain_broken(const VerifyResult& result) {
  throw Error(ErrorCode::kChainBroken, "ledger broken at entry " +
                                           std::to_string(result.broken_entry.value_or(0)) + ": " +
                                           result.reason);
}

}  // namespace

std::string_view to_string(Operation operation) {
  for (auto [value, name] : kOperationNames) {
    if (value == operation) return name;
  }
  return "ingest";
}

Operation operation_from_string(std::string_view text) {
  for (auto [value, name] : kOperationNames) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::kParseError, "unknown operation '" + std::string(text) + "'");
}

nlohmann::json entry_body(const LineageEntry& entry) {
  return {{"entry_id", entry.entry_id},
          {"timestamp", entry.timestamp},
          {"actor", entry.actor},
          {"operation", std::string(to_string(entry.operation))},
          {"operation_detail", entry.operation_detail},
          {"input_digest", entry.input_digest},
          {"output_digest", entry.output_digest},
          {"prev_entry_hash", entry.prev_entry_hash}};
}

Digest compute_entry_hash(const LineageEntry& entry) {
  return Digest::of(canonical_dump(entry_body(entry)));
}

std::string serialize_entry(const LineageEntry& entry) { return canonical_dump(json(entry)); }

LineageEntry parse_entry(std::string_view line) {
  try {
    return json::parse(line).get<LineageEntry>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed ledger entry: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const LineageEntry& entry) {
  j = entry_body(entry);
  j["entry_hash"] = entry.entry_hash;
}

void from_json(const nlohmann::json& j, LineageEntry& entry) {
  if (!j.is_object() || j.size() != 9) {
    throw Error(ErrorCode::kParseError, "ledger entry must be an object with 9 fields");
  }
  j.at("entry_id").get_to(entry.entry_id);
  j.at("timestamp").get_to(entry.timestamp);
  j.at("actor").get_to(entry.actor);
  entry.operation = operation_from_string(j.at("operation").get<std::string>());
  entry.operation_detail = j.at("operation_detail");
  j.at("input_digest").get_to(entry.input_digest);
  j.at("output_digest").get_to(entry.output_digest);
  j.at("prev_entry_hash").get_to(entry.prev_entry_hash);
  j.at("entry_hash").get_to(entry.entry_hash);
}

VerifyResult verify_ledger_text(std::string_view text) { return parse_ledger(text).result; }

LineageLedger::LineageLedger(std::filesystem::path path) : path_(std::move(path)) {}

std::string LineageLedger::text() const { return path_ ? read_file(*path_) : memory_; }

VerifyResult LineageLedger::verify() const { return verify_ledger_text(text()); }

std::vector<LineageEntry> LineageLedger::entries() const {
  ParsedLedger parsed = parse_ledger(text());
  if (!parsed.result.ok) chain_broken(parsed.result);
  return std::move(parsed.entries);
}

LineageEntry LineageLedger::append(const Actor& actor, Operation operation, nlohmann::json detail,
                                   const Digest& input_digest, const Digest& output_digest) {
  if (!path_) {
    ParsedLedger parsed = parse_ledger(memory_);
    if (!parsed.result.ok) chain_broken(parsed.result);
    LineageEntry entry =
        make_entry(parsed.entries, actor, operation, std::move(detail), input_digest, output_digest);
    memory_ += serialize_entry(entry) + "\n";
    return entry;
  }
  if (path_->has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_->parent_path(), ec);
  }
  LockedFile file(*path_);
  ParsedLedger parsed = parse_ledger(file.read_all());
  if (!parsed.result.ok) chain_broken(parsed.result);
  LineageEntry entry =
      make_entry(parsed.entries, actor, operation, std::move(detail), input_digest, output_digest);
  file.append(serialize_entry(entry) + "\n");
  return entry;
}

ReplayResult replay(const Dataset& baseline, const LineageLedger& ledger, std::optional<std::uint64_t> upto) {
  const std::vector<LineageEntry> entries = ledger.entries();
  ReplayResult result{baseline, 0, std::nullopt};
  if (entries.empty()) return result;
  if (entries.front().input_digest != baseline.digest()) {
    throw Error(ErrorCode::kBaselineMismatch, "baseline digest " + baseline.digest().hex() +
                                                  " differs from the first entry's input " +
                                                  entries.front().input_digest.hex());
  }
  for (const LineageEntry& entry : entries) {
    if (upto && entry.entry_id > *upto) break;
    const std::string where = "entry " + std::to_string(entry.entry_id);
    if (entry.operation == Operation::kIngest) {
      if (entry.output_digest == baseline.digest()) {
        result.dataset = baseline;
      } else if (entry.output_digest != result.dataset.digest()) {
        throw Error(ErrorCode::kReplayDivergence,
                    where + " ingests dataset " + entry.output_digest.hex() +
                        ", which is neither the baseline nor the replayed state");
      }
      continue;
    }
    if (entry.operation != Operation::kRemediationStep) continue;
    if (entry.input_digest != result.dataset.digest()) {
      throw Error(ErrorCode::kReplayDivergence, where + " expects input " + entry.input_digest.hex() +
                                                    " but the replayed dataset is " +
                                                    result.dataset.digest().hex());
    }
    RemediationStep step;
    std::size_t index = 1;
    try {
      step = step_from_json(entry.operation_detail.at("step"));
      index = entry.operation_detail.at("change").at("step_index").get<std::size_t>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kReplayDivergence, where + " has an unreadable step: " + e.what());
    }
    StepResult applied = apply_step(result.dataset, step, index);
    if (applied.summary.output_digest != entry.output_digest) {
      throw Error(ErrorCode::kReplayDivergence, where + " recorded output " + entry.output_digest.hex() +
                                                    " but replay produced " +
                                                    applied.summary.output_digest.hex());
    }
    result.dataset = std::move(applied.dataset);
    result.steps_applied += 1;
    result.last_entry = entry.entry_id;
  }
  return result;
}

}  // namespace readiness
