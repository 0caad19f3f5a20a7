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

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "readiness/profiler.hpp"
#include "readiness/quality.hpp"
#include "readiness/stats.hpp"
#include "support.hpp"

// Randomized properties shared by the unit suite and the acceptance runner.
// Each returns a description of the first counterexample, or nullopt.
namespace readiness::testing {

using Failure = std::optional<std::string>;

constexpr int kPropertyCases = 200;

using Grid = std::vector<std::vector<std::string>>;  // [row][column]

inline const std::vector<std::string> kHeader{"age", "hours", "score", "job", "sex", "label"};

inline Grid random_grid(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rows_dist(2, 80);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int rows = rows_dist(rng);
  const double missing = unit(rng) * 0.2, noise = unit(rng) < 0.3 ? 0.05 : 0.0;
  const int classes = std::uniform_int_distribution<int>(1, 3)(rng);
  Grid g;
  for (int r = 0; r < rows; ++r) {
    if (r > 0 && unit(rng) < 0.1) {
      g.push_back(g[std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng)]);
      continue;
    }
    std::vector<std::string> row{
        std::to_string(std::uniform_int_distribution<int>(17, 90)(rng)),
        std::to_string(std::uniform_int_distribution<int>(1, 99)(rng)),
        std::to_string(std::round(unit(rng) * 1e4) / 100.0),
        std::vector<std::string>{"clerk", "tech", "sales"}[std::uniform_int_distribution<std::size_t>(0, 2)(rng)],
        unit(rng) < 0.5 ? "F" : "M",
        std::string(1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, classes - 1)(rng))),
    };
    for (auto& cell : row) {
      if (unit(rng) < missing) cell = "?";
      else if (unit(rng) < noise) cell = "oops";
    }
    g.push_back(std::move(row));
  }
  return g;
}

inline std::string to_csv(const Grid& g) {
  std::string text;
  for (std::size_t c = 0; c < kHeader.size(); ++c) text += (c ? "," : "") + kHeader[c];
  text += "\n";
  for (const auto& row : g) {
    for (std::size_t c = 0; c < row.size(); ++c) text += (c ? "," : "") + row[c];
    text += "\n";
  }
  return text;
}

inline Dataset grid_dataset(const Grid& g) {
  return readiness::testing::csv(to_csv(g), {{"sex", Role::kProtected}, {"label", Role::kTarget}});
}

inline AssessConfig config_for(std::mt19937_64& rng) {
  AssessConfig c;
  c.favorable_value = "a";
  c.label_noise_k = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
  return c;
}


inline Failure scores_in_unit_interval(std::uint64_t seed, int cases = kPropertyCases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Dataset d = grid_dataset(random_grid(rng));
    const QualityAssessment a = assess(d, profile_dataset(d), config_for(rng));
    for (const QualityFinding& f : a.findings) {
      if (f.score && (*f.score < 0.0 || *f.score > 1.0)) {
        return fmt::format("case {}: {} score {}", i, to_string(f.dimension), *f.score);
      }
    }
    if (a.overall_score && (*a.overall_score < 0.0 || *a.overall_score > 1.0)) {
      return fmt::format("case {}: overall score {}", i, *a.overall_score);
    }
  }
  return std::nullopt;
}

inline Failure overall_is_mean(std::uint64_t seed, int cases = kPropertyCases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Dataset d = grid_dataset(random_grid(rng));
    const QualityAssessment a = assess(d, profile_dataset(d), config_for(rng));
    double sum = 0;
    int n = 0;
    for (const QualityFinding& f : a.findings) {
      if (f.score) {
        sum += *f.score;
        ++n;
      }
    }
    if (n == 0 || !a.overall_score) return fmt::format("case {}: no overall score", i);
    if (std::abs(*a.overall_score - sum / n) > 1e-12) {
      return fmt::format("case {}: overall {} but mean {}", i, *a.overall_score, sum / n);
    }
  }
  return std::nullopt;
}

inline Failure missing_score_monotone(std::uint64_t seed, int cases = kPropertyCases) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    Grid g = random_grid(rng);
    double previous = *detect_missing_values(grid_dataset(g)).score;
    for (int round = 0; round < 3; ++round) {
      const double p = unit(rng) * 0.3;
      for (auto& row : g) {
        for (auto& cell : row) {
          if (unit(rng) < p) cell = "?";
        }
      }
      const double now = *detect_missing_values(grid_dataset(g)).score;
      if (now > previous) return fmt::format("case {} round {}: {} rose to {}", i, round, previous, now);
      previous = now;
    }
  }
  return std::nullopt;
}

inline Failure imbalance_invariant(std::uint64_t seed, int cases = kPropertyCases) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Grid g = random_grid(rng);
    const QualityFinding base = detect_class_imbalance(grid_dataset(g));
    Grid shuffled = g;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Grid repeated = g;
    const int copies = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int c = 0; c < copies; ++c) repeated.insert(repeated.end(), g.begin(), g.end());
    for (const Grid* variant : {&shuffled, &repeated}) {
      const QualityFinding f = detect_class_imbalance(grid_dataset(*variant));
      if (f.applicable() != base.applicable()) return fmt::format("case {}: applicability changed", i);
      if (base.applicable() && std::abs(*f.score - *base.score) > 1e-12) {
        return fmt::format("case {}: {} became {}", i, *base.score, *f.score);
      }
    }
  }
  return std::nullopt;
}

inline Failure pearson_affine_invariant(std::uint64_t seed, int cases = kPropertyCases) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 50.0), shift(-1e3, 1e3);
  for (int i = 0; i < cases; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 200)(rng);
    const double rho = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    std::vector<double> x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = gauss(rng);
      y[j] = rho * x[j] + std::sqrt(1 - rho * rho) * gauss(rng);
    }
    const double a = scale(rng) * (i % 2 ? -1.0 : 1.0), b = shift(rng);
    const double c = scale(rng), e = shift(rng);
    std::vector<double> x2(n), y2(n);
    for (std::size_t j = 0; j < n; ++j) {
      x2[j] = a * x[j] + b;
      y2[j] = c * y[j] + e;
    }
    const auto base = stats::pearson(x, y);
    const auto mapped = stats::pearson(x2, y2);
    if (!base || !mapped) return fmt::format("case {}: undefined correlation", i);
    const double expected = a < 0 ? -*base : *base;
    if (std::abs(*mapped - expected) > 1e-9) {
      return fmt::format("case {}: expected {} got {}", i, expected, *mapped);
    }
  }
  return std::nullopt;
}

}  // namespace readiness::testing
