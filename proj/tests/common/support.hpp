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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "readiness/cli.hpp"
#include "readiness/dataset.hpp"

namespace readiness::testing {

inline Dataset csv(std::string_view text, std::map<std::string, Role> roles = {}) {
  IngestConfig config;
  config.roles = std::move(roles);
  return dataset_from_text(text, config);
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag) {
    static std::mt19937_64 engine{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("readiness-" + std::string(tag) + "-" + std::to_string(engine()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun run;
  run.code = run_cli(args, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

inline std::filesystem::path data_dir() { return READINESS_TEST_DATA_DIR; }

}  // namespace readiness::testing
