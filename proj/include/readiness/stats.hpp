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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace readiness::stats {

// Type-7 quantile (linear interpolation at h = (n-1)p + 1) of an ascending
// sample. Requires a non-empty sample and p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

struct Fences {
  double lower = 0;
  double upper = 0;
  bool contains(double x) const { return x >= lower && x <= upper; }
};

// [Q1 - m*IQR, Q3 + m*IQR] from type-7 quartiles. Requires a non-empty sample.
Fences iqr_fences(std::vector<double> sample, double multiplier);

// Sample Pearson correlation. nullopt when n < 2 or either side is constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Cramer's V without bias correction from an r x c contingency table.
// nullopt when min(r, c) < 2 or n < 2.
std::optional<double> cramers_v(const std::vector<std::vector<double>>& table);

// Same, built from two paired label samples.
std::optional<double> cramers_v(std::span<const std::string> a, std::span<const std::string> b);

// Shannon entropy (base 2) of the proportions in counts divided by log2(C).
// C = 1 yields 0. Requires at least one positive count.
double normalized_entropy(std::span<const std::size_t> counts);

}  // namespace readiness::stats
