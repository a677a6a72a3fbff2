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

#include "cetrack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cetrack {

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kContour: return "ce";
    case Metric::kIou: return "iou";
    case Metric::kCpd: return "cpd";
  }
  return "unknown";
}

std::optional<Metric> metric_from_name(std::string_view name) {
  if (name == "ce" || name == "contour") return Metric::kContour;
  if (name == "iou") return Metric::kIou;
  if (name == "cpd") return Metric::kCpd;
  return std::nullopt;
}

CostMatrix::CostMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      cells_(static_cast<std::size_t>(rows) * cols, 0.0) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("CostMatrix: negative shape");
  }
}

CostMatrix build_cost_matrix(const Frame& frame, Metric metric,
                             const ContourConfig& config) {
  for (const auto& obj : frame.gt) {
    if (obj.box.dim() != config.dimension) {
      throw std::invalid_argument(
          "build_cost_matrix: GT box dimension differs from config");
    }
  }
  for (const auto& obj : frame.pred) {
    if (obj.box.dim() != config.dimension) {
      throw std::invalid_argument(
          "build_cost_matrix: prediction box dimension differs from config");
    }
  }

  const int n = static_cast<int>(frame.gt.size());
  const int m = static_cast<int>(frame.pred.size());
  CostMatrix costs(n, m);
  const std::optional<EgoPose> ego(frame.ego);
  for (int i = 0; i < n; ++i) {
    const OrientedBox& g = frame.gt[i].box;
    for (int j = 0; j < m; ++j) {
      const OrientedBox& p = frame.pred[j].box;
      double cell = 0.0;
      switch (metric) {
        case Metric::kContour:
          cell = contour_error(g, p, ego, config);
          break;
        case Metric::kIou:
          cell = 1.0 - iou(g, p);
          break;
        case Metric::kCpd:
          cell = cpd(g, p);
          break;
      }
      costs.at(i, j) = cell;
    }
  }
  return costs;
}

std::vector<std::pair<int, int>> hungarian(const CostMatrix& costs) {
  const int n = costs.rows();
  const int m = costs.cols();
  if (n == 0 || m == 0) return {};

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double c = costs.at(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        throw std::invalid_argument(
            "hungarian: costs must be finite and non-negative");
      }
    }
  }

  // Shortest-augmenting-path assignment with row/column potentials.
  // Requires rows <= cols; solve the transpose otherwise.
  const bool transposed = n > m;
  const int num_rows = transposed ? m : n;
  const int num_cols = transposed ? n : m;
  auto cost_at = [&](int r, int c) {
    return transposed ? costs.at(c, r) : costs.at(r, c);
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> row_potential(num_rows + 1, 0.0);
  std::vector<double> col_potential(num_cols + 1, 0.0);
  std::vector<int> col_owner(num_cols + 1, 0);  // row matched to column, 1-based
  std::vector<int> path(num_cols + 1, 0);

  for (int row = 1; row <= num_rows; ++row) {
    col_owner[0] = row;
    int current_col = 0;
    std::vector<double> min_reduced(num_cols + 1, kInf);
    std::vector<char> visited(num_cols + 1, 0);
    do {
      visited[current_col] = 1;
      const int owner = col_owner[current_col];
      int next_col = 0;
      double delta = kInf;
      for (int col = 1; col <= num_cols; ++col) {
        if (visited[col]) continue;
        const double reduced = cost_at(owner - 1, col - 1) -
                               row_potential[owner] - col_potential[col];
        if (reduced < min_reduced[col]) {
          min_reduced[col] = reduced;
          path[col] = current_col;
        }
        if (min_reduced[col] < delta) {
          delta = min_reduced[col];
          next_col = col;
        }
      }
      for (int col = 0; col <= num_cols; ++col) {
        if (visited[col]) {
          row_potential[col_owner[col]] += delta;
          col_potential[col] -= delta;
        } else {
          min_reduced[col] -= delta;
        }
      }
      current_col = next_col;
    } while (col_owner[current_col] != 0);
    // Augment along the alternating path.
    do {
      const int prev_col = path[current_col];
      col_owner[current_col] = col_owner[prev_col];
      current_col = prev_col;
    } while (current_col != 0);
  }

  std::vector<std::pair<int, int>> out;
  out.reserve(num_rows);
  for (int col = 1; col <= num_cols; ++col) {
    if (col_owner[col] == 0) continue;
    const int r = col_owner[col] - 1;
    const int c = col - 1;
    out.emplace_back(transposed ? c : r, transposed ? r : c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MatchResult gate_matches(const std::vector<std::pair<int, int>>& assignment,
                         const CostMatrix& costs, Metric metric, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("gate_matches: threshold must be positive");
  }
  if (metric == Metric::kIou && tau > 1.0) {
    throw std::invalid_argument("gate_matches: IoU threshold must be <= 1");
  }

  MatchResult result;
  std::vector<char> gt_seen(costs.rows(), 0);
  std::vector<char> pred_seen(costs.cols(), 0);
  for (const auto& [row, col] : assignment) {
    gt_seen[row] = 1;
    pred_seen[col] = 1;
    const double cost = costs.at(row, col);
    const bool pass = metric == Metric::kIou ? (1.0 - cost) >= tau
                                             : cost <= tau;
    if (pass) {
      result.matched.push_back({row, col, cost});
    } else {
      result.rejected.push_back({row, col, cost});
      result.unmatched_gt.push_back(row);
      result.unmatched_pred.push_back(col);
    }
  }
  for (int i = 0; i < costs.rows(); ++i) {
    if (!gt_seen[i]) result.unmatched_gt.push_back(i);
  }
  for (int j = 0; j < costs.cols(); ++j) {
    if (!pred_seen[j]) result.unmatched_pred.push_back(j);
  }
  std::sort(result.unmatched_gt.begin(), result.unmatched_gt.end());
  std::sort(result.unmatched_pred.begin(), result.unmatched_pred.end());
  return result;
}

}  // namespace cetrack
