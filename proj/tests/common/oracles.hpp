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
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "readiness/knn.hpp"
#include "readiness/quality.hpp"
#include "readiness/stats.hpp"
#include "support.hpp"

// Independent reference implementations, plus comparisons against the library
// that return the first disagreement (nullopt when everything matches).
namespace readiness::testing {

// Hyndman-Fan type 7, written from the definition h = (n - 1)p + 1 (1-based).
inline double type7(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  const double h = static_cast<double>(x.size() - 1) * p + 1.0;
  const double lo = std::floor(h);
  const std::size_t i = static_cast<std::size_t>(lo);  // 1-based
  if (i >= x.size()) return x.back();
  return x[i - 1] + (h - lo) * (x[i] - x[i - 1]);
}


// Random numeric features plus a "label" column, as CSV text and as raw values.
struct RandomTable {
  std::vector<std::vector<std::optional<double>>> features;  // [column][row]
  std::vector<std::optional<std::string>> labels;
  std::string text;
};

inline RandomTable random_table(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rows_dist(8, 200), cols_dist(1, 4), classes_dist(2, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int rows = rows_dist(rng), cols = cols_dist(rng), classes = classes_dist(rng);
  const double missing_label = unit(rng) < 0.5 ? 0.0 : 0.1;
  RandomTable t;
  t.features.assign(static_cast<std::size_t>(cols), {});
  std::vector<int> kind(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c) {
    // 0 = small integers (many ties), 1 = reals, 2 = constant, 3 = integers with gaps
    kind[static_cast<std::size_t>(c)] = std::uniform_int_distribution<int>(0, 9)(rng) == 0 ? 2 : c % 2;
    if (unit(rng) < 0.2) kind[static_cast<std::size_t>(c)] = 3;
  }
  for (int c = 0; c < cols; ++c) t.text += (c ? "," : "") + std::string("f") + std::to_string(c);
  t.text += ",label\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::string token;
      std::optional<double> value;
      switch (kind[static_cast<std::size_t>(c)]) {
        case 0: {
          const int v = std::uniform_int_distribution<int>(0, 5)(rng);
          token = std::to_string(v);
          break;
        }
        case 1: {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", unit(rng) * 100.0 - 50.0);
          token = buf;
          break;
        }
        case 2: token = "7"; break;
        default: token = std::to_string(std::uniform_int_distribution<int>(0, 3)(rng) * 1000); break;
      }
      if (unit(rng) < 0.03) token = "?";
      if (token != "?") value = std::stod(token);
      t.features[static_cast<std::size_t>(c)].push_back(value);
      t.text += (c ? "," : "") + token;
    }
    std::optional<std::string> label;
    if (unit(rng) >= missing_label) {
      label = std::string(1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, classes - 1)(rng)));
    }
    t.labels.push_back(label);
    t.text += "," + label.value_or("?") + "\n";
  }
  return t;
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : v[n / 2 - 1] + 0.5 * (v[n / 2] - v[n / 2 - 1]);
}

// Brute force: all pairwise distances, stable sort by (distance, position).
inline std::vector<std::optional<double>> kdn_oracle(const RandomTable& t, std::size_t k) {
  std::vector<std::vector<double>> scaled;
  for (const auto& column : t.features) {
    std::vector<double> present;
    for (const auto& v : column) {
      if (v) present.push_back(*v);
    }
    if (present.empty()) continue;
    const double lo = *std::min_element(present.begin(), present.end());
    const double hi = *std::max_element(present.begin(), present.end());
    if (lo == hi) continue;
    const double fill = median_of(present);
    std::vector<double> s;
    for (const auto& v : column) s.push_back((v.value_or(fill) - lo) / (hi - lo));
    scaled.push_back(std::move(s));
  }
  std::vector<std::size_t> labeled;
  for (std::size_t r = 0; r < t.labels.size(); ++r) {
    if (t.labels[r]) labeled.push_back(r);
  }
  std::vector<std::optional<double>> out(t.labels.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < labeled.size(); ++j) {
      if (j == i) continue;
      double sum = 0;
      for (const auto& s : scaled) {
        const double diff = s[labeled[i]] - s[labeled[j]];
        sum += diff * diff;
      }
      d.emplace_back(sum, j);
    }
    std::sort(d.begin(), d.end());
    std::size_t disagree = 0;
    for (std::size_t n = 0; n < k; ++n) {
      if (*t.labels[labeled[d[n].second]] != *t.labels[labeled[i]]) ++disagree;
    }
    out[labeled[i]] = static_cast<double>(disagree) / static_cast<double>(k);
  }
  return out;
}

inline std::optional<std::string> quantile_oracle_mismatch(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 60);
  std::normal_distribution<double> value(0.0, 25.0);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < samples; ++trial) {
    std::vector<double> x(static_cast<std::size_t>(size(rng)));
    for (double& v : x) v = trial % 3 == 0 ? std::round(value(rng)) : value(rng);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0, prob(rng), prob(rng)}) {
      const double got = stats::quantile_sorted(sorted, p), want = type7(x, p);
      if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) {
        return fmt::format("sample {} p={}: {} vs {}", trial, p, got, want);
      }
    }
  }
  return std::nullopt;
}

// Compares per-row kDN, the label-noise score and flagged rows exactly.
inline std::optional<std::string> kdn_oracle_mismatch(std::uint64_t seed, int datasets, int* compared = nullptr) {
  std::mt19937_64 rng(seed);
  int done = 0;
  for (int trial = 0; trial < datasets; ++trial) {
    const RandomTable t = random_table(rng);
    const std::size_t k = std::vector<std::size_t>{1, 3, 5, 7}[static_cast<std::size_t>(trial % 4)];
    const Dataset d = csv(t.text, {{"label", Role::kTarget}});
    std::size_t labeled = 0;
    for (const auto& l : t.labels) labeled += l.has_value();
    const KdnResult got = compute_kdn(d, k);
    if (labeled <= k) {
      if (got.applicable) return fmt::format("dataset {}: applicable with {} labels, k={}", trial, labeled, k);
      continue;
    }
    if (!got.applicable) return fmt::format("dataset {}: not applicable ({})", trial, got.reason);
    const auto expected = kdn_oracle(t, k);
    if (got.kdn != expected) return fmt::format("dataset {} (k={}): per-row kDN differs", trial, k);

    AssessConfig config;
    config.label_noise_k = k;
    const QualityFinding f = detect_label_noise(d, config);
    std::size_t flagged = 0;
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < expected.size(); ++r) {
      if (expected[r] && *expected[r] > config.label_noise_threshold) {
        ++flagged;
        rows.push_back(r);
      }
    }
    if (*f.score != 1.0 - static_cast<double>(flagged) / static_cast<double>(labeled)) {
      return fmt::format("dataset {}: score {} differs", trial, *f.score);
    }
    if (f.evidence.rows != rows) return fmt::format("dataset {}: flagged rows differ", trial);
    ++done;
  }
  if (compared) *compared = done;
  return std::nullopt;
}

}  // namespace readiness::testing
