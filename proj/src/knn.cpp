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

#include "readiness/knn.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "readiness/stats.hpp"

namespace readiness {

namespace {

constexpr std::size_t kLeafSize = 16;

struct Candidate {
  double distance;
  std::size_t index;
  bool operator<(const Candidate& other) const {
    if (distance != other.distance) return distance < other.distance;
    return index < other.index;
  }
};

}  // namespace

KdTree::KdTree(std::vector<double> points, std::size_t dims)
    : points_(std::move(points)), dims_(dims), count_(dims == 0 ? 0 : points_.size() / dims) {
  order_.resize(count_);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (count_ > 0) build(0, count_, 0);
}

int KdTree::build(std::size_t begin, std::size_t end, std::size_t depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= kLeafSize) return id;
  const std::size_t dim = depth % dims_;
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     return points_[a * dims_ + dim] < points_[b * dims_ + dim];
                   });
  const double split = points_[order_[mid] * dims_ + dim];
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[id].dim = dim;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KdTree::distance(std::size_t a, std::size_t b) const {
  double sum = 0;
  for (std::size_t d = 0; d < dims_; ++d) {
    const double diff = points_[a * dims_ + d] - points_[b * dims_ + d];
    sum += diff * diff;
  }
  return sum;
}

std::vector<std::size_t> KdTree::nearest(std::size_t query, std::size_t k) const {
  std::priority_queue<Candidate> best;  // max-heap on (distance, index)
  auto offer = [&](std::size_t index) {
    if (index == query) return;
    Candidate c{distance(query, index), index};
    if (best.size() < k) {
      best.push(c);
    } else if (c < best.top()) {
      best.pop();
      best.push(c);
    }
  };

  // Depth-first with the nearer child first.
  auto visit = [&](auto&& self, int id) -> void {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) offer(order_[i]);
      return;
    }
    const double diff = points_[query * dims_ + node.dim] - node.split;
    const int near = diff < 0 ? node.left : node.right;
    const int far = diff < 0 ? node.right : node.left;
    self(self, near);
    // Equal bounds are still explored so index ties resolve exactly.
    if (best.size() < k || diff * diff <= best.top().distance) self(self, far);
  };
  if (count_ > 0) visit(visit, 0);

  std::vector<std::size_t> out(best.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = best.top().index;
    best.pop();
  }
  return out;
}

KdnResult compute_kdn(const Dataset& dataset, std::size_t k) {
  KdnResult result;
  const auto target = dataset.first_with_role(Role::kTarget);
  if (!target) {
    result.reason = "no target column is configured";
    return result;
  }
  const Column& label_column = dataset.column(*target);
  if (!label_column.categorical && label_column.base_type != ValueType::kBoolean) {
    result.reason = "target column '" + label_column.name + "' is not categorical";
    return result;
  }
  std::vector<std::size_t> numeric;
  for (std::size_t c = 0; c < dataset.column_count(); ++c) {
    const Column& column = dataset.column(c);
    if (column.role == Role::kFeature && column.is_numeric()) numeric.push_back(c);
  }
  if (numeric.empty()) {
    result.reason = "no numeric feature columns";
    return result;
  }
  if (dataset.row_count() <= k) {
    result.reason = "row count " + std::to_string(dataset.row_count()) + " does not exceed k=" +
                    std::to_string(k);
    return result;
  }

  std::vector<std::size_t> labeled_rows;
  std::vector<int> labels;
  std::unordered_map<std::string, int> label_ids;
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    const Cell& cell = label_column.cells[r];
    if (is_missing(cell)) continue;
    auto [it, inserted] = label_ids.emplace(cell_token(cell), static_cast<int>(label_ids.size()));
    labeled_rows.push_back(r);
    labels.push_back(it->second);
  }
  if (labeled_rows.size() <= k) {
    result.reason = "only " + std::to_string(labeled_rows.size()) +
                    " labeled rows; need more than k=" + std::to_string(k);
    return result;
  }

  // Scaled feature columns, constant ones dropped.
  std::vector<std::vector<double>> features;
  for (std::size_t c : numeric) {
    const Column& column = dataset.column(c);
    std::vector<double> present;
    for (const Cell& cell : column.cells) {
      if (auto v = numeric_value(cell)) present.push_back(*v);
    }
    if (present.empty()) continue;
    const auto [lo, hi] = std::minmax_element(present.begin(), present.end());
    const double min = *lo, max = *hi;
    if (min == max) continue;
    std::sort(present.begin(), present.end());
    const double median = stats::quantile_sorted(present, 0.5);
    std::vector<double> scaled(dataset.row_count());
    for (std::size_t r = 0; r < dataset.row_count(); ++r) {
      const double v = numeric_value(column.cells[r]).value_or(median);
      scaled[r] = (v - min) / (max - min);
    }
    features.push_back(std::move(scaled));
    result.feature_columns.push_back(column.name);
  }

  const std::size_t dims = features.size();
  const std::size_t n = labeled_rows.size();
  result.applicable = true;
  result.labeled_rows = n;
  result.kdn.assign(dataset.row_count(), std::nullopt);

  auto score = [&](std::size_t i, const std::vector<std::size_t>& neighbors) {
    std::size_t disagree = 0;
    for (std::size_t j : neighbors) {
      if (labels[j] != labels[i]) ++disagree;
    }
    result.kdn[labeled_rows[i]] = static_cast<double>(disagree) / static_cast<double>(k);
  };

  if (dims == 0) {
    // Every distance is zero; the lowest-index rows are the neighbors.
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> neighbors;
      for (std::size_t j = 0; j < n && neighbors.size() < k; ++j) {
        if (j != i) neighbors.push_back(j);
      }
      score(i, neighbors);
    }
    return result;
  }

  std::vector<double> points(n * dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dims; ++d) points[i * dims + d] = features[d][labeled_rows[i]];
  }
  const KdTree tree(std::move(points), dims);
  for (std::size_t i = 0; i < n; ++i) score(i, tree.nearest(i, k));
  return result;
}

}  // namespace readiness
