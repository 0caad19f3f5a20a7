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

#include "readiness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace readiness::stats {

double quantile_sorted(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Fences iqr_fences(std::vector<double> sample, double multiplier) {
  std::sort(sample.begin(), sample.end());
  const double q1 = quantile_sorted(sample, 0.25);
  const double q3 = quantile_sorted(sample, 0.75);
  const double iqr = q3 - q1;
  return {q1 - multiplier * iqr, q3 + multiplier * iqr};
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> cramers_v(const std::vector<std::vector<double>>& table) {
  const std::size_t rows = table.size();
  const std::size_t cols = rows == 0 ? 0 : table.front().size();
  std::vector<double> row_sum(rows, 0), col_sum(cols, 0);
  double n = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      row_sum[i] += table[i][j];
      col_sum[j] += table[i][j];
      n += table[i][j];
    }
  }
  // Empty rows or columns carry no category.
  const auto r = std::count_if(row_sum.begin(), row_sum.end(), [](double v) { return v > 0; });
  const auto c = std::count_if(col_sum.begin(), col_sum.end(), [](double v) { return v > 0; });
  const auto k = std::min(r, c);
  if (k < 2 || n < 2) return std::nullopt;
  double chi2 = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_sum[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      if (col_sum[j] == 0) continue;
      const double expected = row_sum[i] * col_sum[j] / n;
      const double diff = table[i][j] - expected;
      chi2 += diff * diff / expected;
    }
  }
  return std::clamp(std::sqrt(chi2 / (n * static_cast<double>(k - 1))), 0.0, 1.0);
}

std::optional<double> cramers_v(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::map<std::string, std::size_t> row_index, col_index;
  for (std::size_t i = 0; i < n; ++i) {
    row_index.emplace(a[i], 0);
    col_index.emplace(b[i], 0);
  }
  std::size_t next = 0;
  for (auto& [key, index] : row_index) index = next++;
  next = 0;
  for (auto& [key, index] : col_index) index = next++;
  std::vector<std::vector<double>> table(row_index.size(), std::vector<double>(col_index.size(), 0));
  for (std::size_t i = 0; i < n; ++i) table[row_index[a[i]]][col_index[b[i]]] += 1;
  return cramers_v(table);
}

double normalized_entropy(std::span<const std::size_t> counts) {
  double total = 0;
  std::size_t classes = 0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    total += static_cast<double>(c);
    ++classes;
  }
  if (classes < 2) return 0.0;
  double h = 0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return std::clamp(h / std::log2(static_cast<double>(classes)), 0.0, 1.0);
}

}  // namespace readiness::stats
