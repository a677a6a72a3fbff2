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

#include "cetrack/contour.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cetrack {

std::string_view perspective_name(Perspective p) {
  return p == Perspective::kEgoCentric ? "ego" : "object";
}

std::optional<Perspective> perspective_from_name(std::string_view name) {
  if (name == "ego") return Perspective::kEgoCentric;
  if (name == "object") return Perspective::kObjectCentric;
  return std::nullopt;
}

int ContourConfig::corner_count() const {
  if (dimension != 2 && dimension != 3) {
    throw std::invalid_argument("ContourConfig: dimension must be 2 or 3");
  }
  if (perspective == Perspective::kObjectCentric) {
    return dimension == 2 ? 4 : 8;
  }
  return dimension == 2 ? 3 : 6;
}

std::vector<Point> select_corners(const OrientedBox& box,
                                  const std::optional<EgoPose>& ego,
                                  const ContourConfig& config) {
  if (box.dim() != config.dimension) {
    throw std::invalid_argument("select_corners: box dimension differs from config");
  }
  std::vector<Point> all = corners(box);
  if (config.perspective == Perspective::kObjectCentric) {
    return all;
  }
  if (!ego.has_value()) {
    throw std::invalid_argument("select_corners: ego pose required in ego-centric mode");
  }

  std::vector<int> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    dist[i] = distance(all[i], ego->position);
  }
  // Stable sort keeps the fixed corner ordering as the tie-break.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });

  const int count = config.corner_count();
  std::vector<Point> selected;
  selected.reserve(count);
  for (int i = 0; i < count; ++i) selected.push_back(all[order[i]]);
  return selected;
}

double contour_error(const OrientedBox& gt, const OrientedBox& pred,
                     const std::optional<EgoPose>& ego,
                     const ContourConfig& config) {
  if (gt.dim() != pred.dim()) {
    throw std::invalid_argument("contour_error: box dimensions differ");
  }
  const std::vector<Point> gt_corners = select_corners(gt, ego, config);
  const std::vector<Point> pred_corners = select_corners(pred, ego, config);

  double pred_to_gt = 0.0;
  for (const Point& p : pred_corners) {
    pred_to_gt = std::max(pred_to_gt, point_to_box_distance(p, gt));
  }
  double gt_to_pred = 0.0;
  for (const Point& g : gt_corners) {
    gt_to_pred = std::max(gt_to_pred, point_to_box_distance(g, pred));
  }
  return std::max(pred_to_gt, gt_to_pred);
}

bool is_match(const OrientedBox& gt, const OrientedBox& pred,
              const std::optional<EgoPose>& ego, const ContourConfig& config,
              double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("is_match: threshold must be positive");
  }
  return contour_error(gt, pred, ego, config) <= tau;
}

}  // namespace cetrack
