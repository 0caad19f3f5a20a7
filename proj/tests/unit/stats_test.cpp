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

#include <algorithm>
#include <cmath>

#include "readiness/error.hpp"
#include "readiness/stats.hpp"

using namespace readiness;


TEST_SUITE("stats") {

TEST_CASE("quantile examples") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(stats::quantile_sorted(x, 0.5) == 2.5);
  CHECK(stats::quantile_sorted(x, 0.25) == 1.75);
  const std::vector<double> one{7};
  CHECK(stats::quantile_sorted(one, 0.9) == 7);
}

TEST_CASE("IQR fences on 1..9 plus 100") {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  const stats::Fences f = stats::iqr_fences(x, 1.5);
  // q1 = 3.25, q3 = 7.75, IQR = 4.5
  CHECK(f.lower == doctest::Approx(-3.5));
  CHECK(f.upper == doctest::Approx(14.5));
  CHECK(std::count_if(x.begin(), x.end(), [&](double v) { return !f.contains(v); }) == 1);
  CHECK(f.contains(f.upper));
}

TEST_CASE("pearson of perfect lines is plus or minus one") {
  std::vector<double> x, up, down;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i);
    up.push_back(3.0 * i + 2.0);
    down.push_back(-0.5 * i + 10.0);
  }
  CHECK(*stats::pearson(x, up) == doctest::Approx(1.0));
  CHECK(*stats::pearson(x, down) == doctest::Approx(-1.0));
  CHECK(*stats::pearson(x, up) <= 1.0);
  CHECK(*stats::pearson(x, down) >= -1.0);
}

TEST_CASE("pearson is undefined for a constant series") {
  const std::vector<double> x{1, 2, 3}, c{5, 5, 5};
  CHECK_FALSE(stats::pearson(x, c).has_value());
  const std::vector<double> one{1};
  CHECK_FALSE(stats::pearson(one, one).has_value());
}

TEST_CASE("cramers V on a hand-worked 2x2 table") {
  // chi2 = 2 + 2 + 4/3 + 4/3 = 20/3, n = 10, min(r, c) - 1 = 1
  const std::vector<std::vector<double>> table{{4, 0}, {1, 5}};
  CHECK(*stats::cramers_v(table) == doctest::Approx(0.816496580927726).epsilon(1e-12));
}

TEST_CASE("cramers V from label vectors") {
  const std::vector<std::string> a{"x", "x", "y", "y"}, same{"p", "p", "q", "q"},
      independent{"p", "q", "p", "q"};
  CHECK(*stats::cramers_v(a, same) == doctest::Approx(1.0));
  CHECK(*stats::cramers_v(a, independent) == doctest::Approx(0.0));
  const std::vector<std::string> constant{"k", "k", "k", "k"};
  CHECK_FALSE(stats::cramers_v(a, constant).has_value());
}

TEST_CASE("normalized entropy") {
  const std::vector<std::size_t> skewed{90, 10}, even{5, 5, 5}, single{12};
  CHECK(stats::normalized_entropy(skewed) == doctest::Approx(0.4690).epsilon(1e-4 / 0.469));
  CHECK(stats::normalized_entropy(skewed) == doctest::Approx(0.46899559358928122));
  CHECK(stats::normalized_entropy(even) == doctest::Approx(1.0));
  CHECK(stats::normalized_entropy(single) == 0.0);
}

}  // TEST_SUITE
