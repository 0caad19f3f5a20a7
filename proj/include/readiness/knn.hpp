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

#include <optional>
#include <string>
#include <vector>

#include "readiness/dataset.hpp"

namespace readiness {

// k-disagreeing-neighbors over the numeric feature columns of a dataset.
struct KdnResult {
  bool applicable = false;
  std::string reason;  // why not applicable
  // Per row; nullopt for rows without a label.
  std::vector<std::optional<double>> kdn;
  std::size_t labeled_rows = 0;
  std::vector<std::string> feature_columns;  // after dropping constant ones
};

// Features are min-max scaled to [0, 1]; missing values take the column median
// for distance purposes. Neighbors are the k labeled rows with the smallest
// squared Euclidean distance, ties to the lower row index.
KdnResult compute_kdn(const Dataset& dataset, std::size_t k);

// Exact k-nearest neighbor search with deterministic tie-breaking.
class KdTree {
 public:
  // points: row-major, dims values per point.
  KdTree(std::vector<double> points, std::size_t dims);

  // Indices of the k nearest points to point `query` (itself excluded),
  // ordered by (distance, index).
  std::vector<std::size_t> nearest(std::size_t query, std::size_t k) const;

  std::size_t size() const { return count_; }

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t dim = 0;
    double split = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t begin, std::size_t end, std::size_t depth);
  double distance(std::size_t a, std::size_t b) const;

  std::vector<double> points_;
  std::size_t dims_;
  std::size_t count_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace readiness
