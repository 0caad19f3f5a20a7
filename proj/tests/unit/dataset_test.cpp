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

#include <doctest.h>

#include "readiness/dataset.hpp"
#include "readiness/digest.hpp"
#include "readiness/error.hpp"
#include "support.hpp"

using namespace readiness;
using readiness::testing::csv;

TEST_SUITE("dataset") {

TEST_CASE("token classification prefers boolean, then integer, then real") {
  CHECK(classify_token("TRUE") == ValueType::kBoolean);
  CHECK(classify_token("42") == ValueType::kInteger);
  CHECK(classify_token("-7") == ValueType::kInteger);
  CHECK(classify_token("4.5") == ValueType::kReal);
  CHECK(classify_token("1e3") == ValueType::kReal);
  CHECK(classify_token("4.5kg") == ValueType::kText);
}

TEST_CASE("column types are inferred with missing tokens skipped") {
  const Dataset d = csv("a,b,c,d\n1,1.5,x,true\n2,?,y,false\n,3,x,\n");
  CHECK(d.row_count() == 3);
  CHECK(d.column(0).base_type == ValueType::kInteger);
  CHECK(d.column(1).base_type == ValueType::kReal);
  CHECK(d.column(2).base_type == ValueType::kText);
  CHECK(d.column(3).base_type == ValueType::kBoolean);
  CHECK(d.column(0).missing_count() == 1);
  CHECK(d.column(1).missing_count() == 1);
  CHECK(std::get<std::int64_t>(d.column(0).cells[1]) == 2);
  CHECK(std::get<double>(d.column(1).cells[2]) == 3.0);
}

TEST_CASE("minority tokens that do not parse are kept as text violations") {
  std::string text = "v\n";
  for (int i = 0; i < 99; ++i) text += std::to_string(i) + "\n";
  text += "n/a-ish\n";
  const Dataset d = csv(text);
  const Column& c = d.column(0);
  CHECK(c.base_type == ValueType::kInteger);
  CHECK(c.type_violation_count == 1);
  CHECK(std::get<std::string>(c.cells[99]) == "n/a-ish");
  CHECK(c.dominance == doctest::Approx(0.99));
}

TEST_CASE("mixed columns below the dominance threshold fall back to text") {
  const Dataset d = csv("v\n1\n2\nx\ny\n");
  CHECK(d.column(0).base_type == ValueType::kText);
  CHECK(d.column(0).type_violation_count == 0);
}

TEST_CASE("quoted fields survive a canonical round trip") {
  const Dataset d = csv("name,note\n\"Smith, J\",\"said \"\"hi\"\"\"\nLee,\"two\nlines\"\n");
  CHECK(std::get<std::string>(d.column(0).cells[0]) == "Smith, J");
  CHECK(std::get<std::string>(d.column(1).cells[0]) == "said \"hi\"");
  CHECK(std::get<std::string>(d.column(1).cells[1]) == "two\nlines");
  const Dataset again = csv(canonical_serialization(d));
  CHECK(again.digest() == d.digest());
  CHECK(canonical_serialization(again) == canonical_serialization(d));
}

TEST_CASE("the digest covers content only") {
  const Dataset a = dataset_from_text("x,y\n1,2\n", {}, "first.csv");
  const Dataset b = dataset_from_text("x,y\r\n1,2\r\n", {}, "elsewhere/second.csv");
  CHECK(a.digest() == b.digest());
  CHECK(a.digest() == Digest::of(canonical_serialization(a)));
  const Dataset c = csv("x,y\n1,3\n");
  CHECK(c.digest() != a.digest());
  const Dataset renamed = csv("x,z\n1,2\n");
  CHECK(renamed.digest() != a.digest());
}

TEST_CASE("real values serialize to the shortest round-trip form") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(-1e-7) == "-1e-07");
  CHECK(format_real(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("ingest errors carry stable codes") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::kIoError;
  };
  CHECK(code_of([] { csv(""); }) == ErrorCode::kEmptyDataset);
  CHECK(code_of([] { csv("a,b\n"); }) == ErrorCode::kEmptyDataset);
  CHECK(code_of([] { csv("a,a\n1,2\n"); }) == ErrorCode::kDuplicateColumnName);
  CHECK(code_of([] { csv("a,b\n1,2,3\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { csv("a\n\"open\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { load_dataset("/nonexistent/readiness.csv"); }) == ErrorCode::kFileNotFound);
  CHECK(code_of([] { csv("a\n1\n", {{"nope", Role::kTarget}}); }) == ErrorCode::kColumnNotFound);
}

TEST_CASE("roles and type overrides apply at ingest") {
  IngestConfig config;
  config.roles = {{"label", Role::kTarget}, {"zip", Role::kIdentifier}};
  config.type_overrides = {{"zip", DeclaredType::kText}};
  const Dataset d = dataset_from_text("zip,label\n02139,0\n10001,1\n", config);
  CHECK(d.column(0).role == Role::kIdentifier);
  CHECK(d.column(0).base_type == ValueType::kText);
  CHECK(std::get<std::string>(d.column(0).cells[0]) == "02139");
  CHECK(d.column(1).role == Role::kTarget);
  CHECK(d.column(1).categorical);
  CHECK(d.first_with_role(Role::kTarget) == 1);
}

TEST_CASE("write_dataset emits the canonical bytes") {
  readiness::testing::TempDir dir("ds");
  const Dataset d = csv("a,b\n1,x\n?,\"y,z\"\n");
  write_dataset(d, dir / "out.csv");
  CHECK(readiness::testing::read_file(dir / "out.csv") == canonical_serialization(d));
  CHECK(load_dataset(dir / "out.csv").digest() == d.digest());
}

TEST_CASE("digest hex round trip") {
  const Digest d = Digest::of("abc");
  CHECK(d.hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(Digest::from_hex(d.hex()) == d);
  CHECK_THROWS_AS(Digest::from_hex("xyz"), Error);
  CHECK(Digest{}.is_zero());
}

}  // TEST_SUITE
