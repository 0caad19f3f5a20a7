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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace readiness {

// A SHA-256 value. Rendered as 64 lowercase hex characters.
class Digest {
 public:
  static constexpr std::size_t kSize = 32;

  Digest() = default;  // all zeros
  explicit Digest(const std::array<std::uint8_t, kSize>& bytes) : bytes_(bytes) {}

  static Digest of(std::string_view bytes);
  // Throws Error(kParseError) on anything other than 64 hex characters.
  static Digest from_hex(std::string_view hex);

  std::string hex() const;
  bool is_zero() const;
  std::span<const std::uint8_t, kSize> bytes() const { return bytes_; }

  auto operator<=>(const Digest&) const = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

// Incremental hasher for payloads built in pieces.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view bytes);
  Digest finish();

 private:
  void* ctx_;
};

}  // namespace readiness
