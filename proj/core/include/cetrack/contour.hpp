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

#ifndef CETRACK_CONTOUR_HPP_
#define CETRACK_CONTOUR_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "cetrack/geometry.hpp"

namespace cetrack {

/// Ego-centric: corner selection depends on the ego vehicle's position.
/// Object-centric: every corner participates, no ego reference.
enum class Perspective { kEgoCentric, kObjectCentric };

std::string_view perspective_name(Perspective p);
std::optional<Perspective> perspective_from_name(std::string_view name);

struct ContourConfig {
  int dimension = 3;  // 2 or 3
  Perspective perspective = Perspective::kEgoCentric;

  /// Corners participating per box: the 3 (2D) or 6 (3D) nearest to the
  /// ego center when ego-centric, all 4 or 8 when object-centric.
  int corner_count() const;
};

/// The corners of `box` that participate in the contour error. Ego-centric
/// selection orders by Euclidean distance to the ego position; ties keep
/// the lower corner index (see corners() for the fixed ordering).
/// Throws std::invalid_argument if ego is absent in ego-centric mode or
/// dimensions disagree.
std::vector<Point> select_corners(const OrientedBox& box,
                                  const std::optional<EgoPose>& ego,
                                  const ContourConfig& config);

/// Contour error between a ground-truth and a predicted box: the larger of
/// the two directed errors, where each directed error is the maximum over
/// the selected corners of one box of the distance to the other box's solid
/// region. Symmetric in its box arguments; 0 for identical boxes.
double contour_error(const OrientedBox& gt, const OrientedBox& pred,
                     const std::optional<EgoPose>& ego,
                     const ContourConfig& config);

/// True iff contour_error(gt, pred) <= tau (boundary inclusive).
/// Throws std::invalid_argument for non-positive tau.
bool is_match(const OrientedBox& gt, const OrientedBox& pred,
              const std::optional<EgoPose>& ego, const ContourConfig& config,
              double tau);

}  // namespace cetrack

#endif  // CETRACK_CONTOUR_HPP_
