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

#include "properties.hpp"

using namespace readiness::testing;

namespace {

void expect_holds(const Failure& failure) {
  if (failure) FAIL_CHECK(*failure);
}

}  // namespace

TEST_SUITE("property") {

TEST_CASE("every score and the overall score lie in [0, 1]") { expect_holds(scores_in_unit_interval(1)); }

TEST_CASE("overall score is the mean of the applicable scores") { expect_holds(overall_is_mean(2)); }

TEST_CASE("masking more cells never raises the missing-values score") {
  expect_holds(missing_score_monotone(3));
}

TEST_CASE("class imbalance is invariant under row permutation and uniform duplication") {
  expect_holds(imbalance_invariant(4));
}

TEST_CASE("pearson is invariant under positive affine maps and flips sign under negative ones") {
  expect_holds(pearson_affine_invariant(5));
}

}  // TEST_SUITE
