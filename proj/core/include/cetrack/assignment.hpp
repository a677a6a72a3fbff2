// Copyright 2026 The cetrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CETRACK_ASSIGNMENT_HPP_
#define CETRACK_ASSIGNMENT_HPP_

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cetrack/contour.hpp"
#include "cetrack/frame.hpp"

namespace cetrack {

/// Matching criterion behind a cost matrix. All three run through the same
/// minimizing assignment: IoU enters as 1 - IoU.
enum class Metric { kContour, kIou, kCpd };

std::string_view metric_name(Metric m);  // "ce", "iou", "cpd"
std::optional<Metric> metric_from_name(std::string_view name);

/// Dense row-major cost matrix; rows are ground-truth objects, columns are
/// predictions. Either side may be empty.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int rows, int cols);

  double at(int row, int col) const { return cells_[index(row, col)]; }
  double& at(int row, int col) { return cells_[index(row, col)]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * cols_ + col;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cells_;
};

/// Pairwise costs for one frame: contour error, center distance, or
/// 1 - IoU, depending on `metric`. The frame's ego pose feeds ego-centric
/// corner selection.
CostMatrix build_cost_matrix(const Frame& frame, Metric metric,
                             const ContourConfig& config);

/// Minimum-total-cost assignment of size min(rows, cols), as (row, col)
/// pairs sorted by row. Rectangular matrices are handled directly. Ties
/// between equal-cost optima resolve deterministically (rows processed in
/// order, columns scanned ascending). Throws std::invalid_argument on
/// non-finite or negative cells.
std::vector<std::pair<int, int>> hungarian(const CostMatrix& costs);

struct MatchedPair {
  int gt_index = 0;
  int pred_index = 0;
  double cost = 0.0;
};

/// Outcome of gating an assignment: pairs that passed, indices left without
/// a partner, and `rejected` keeping the pairing of assigned-but-over-
/// threshold pairs (their indices also appear in the unmatched lists).
struct MatchResult {
  std::vector<MatchedPair> matched;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_pred;
  std::vector<MatchedPair> rejected;
};

/// Splits an assignment by the metric's threshold. For contour error and
/// center distance a pair passes when cost <= tau; for IoU when
/// 1 - cost >= tau. Both comparisons are boundary inclusive.
/// Throws std::invalid_argument for invalid tau (tau <= 0, or tau > 1 in
/// IoU mode).
MatchResult gate_matches(const std::vector<std::pair<int, int>>& assignment,
                         const CostMatrix& costs, Metric metric, double tau);

}  // namespace cetrack

#endif  // CETRACK_ASSIGNMENT_HPP_
