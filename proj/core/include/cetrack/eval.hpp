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

#ifndef CETRACK_EVAL_HPP_
#define CETRACK_EVAL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cetrack/metrics.hpp"

namespace cetrack {

/// Per-class default thresholds. Gates follow the optimum found per
/// category (contour error), the nuScenes tracking threshold (center
/// distance) and the KITTI convention (IoU; the pedestrian value is the
/// usual non-vehicle relaxation). `ce_window` bounds the contour errors
/// admitted into correlation analyses.
struct ClassThresholds {
  double ce_gate = 0.0;    // meters
  double cpd_gate = 0.0;   // meters
  double iou_gate = 0.0;   // IoU, kept when >= gate
  double ce_window = 0.0;  // meters
};

std::optional<ClassThresholds> default_thresholds(std::string_view class_label);

struct EvalConfig {
  std::string class_label = "car";
  std::vector<Metric> metrics{Metric::kContour, Metric::kIou, Metric::kCpd};
  /// Gate override; only valid when exactly one metric is selected.
  std::optional<double> gate_override;
  /// Force 2D (BEV) or 3D evaluation; defaults to the data's dimension.
  std::optional<int> dimension;
  Perspective perspective = Perspective::kEgoCentric;
  std::vector<double> distance_edges{0.0, 10.0, 20.0, 30.0};
  std::vector<double> yaw_edges_deg{0.0, 10.0, 30.0};
  /// Contour-error window for correlations; defaults per class.
  std::optional<double> ce_window;
  /// Worker threads across scenes; 0 picks the hardware concurrency.
  int threads = 0;
};

struct SceneCounts {
  std::string scene_id;
  ErrorCounts counts;
};

struct QuadrantSummary {
  double ce_threshold = 0.0;
  double iou_threshold = 0.0;
  QuadrantCounts counts;
};

struct CorrelationSummary {
  double ce_window = 0.0;
  std::int64_t count = 0;  // records inside the window
  std::optional<double> ce_iou;
  std::optional<double> ce_cpd;
  std::optional<double> iou_cpd;
};

/// One matching criterion's full evaluation: gated functional counts per
/// scene and overall, the pooled per-pair records, bin tables, and the
/// threshold-independent summaries computed from this criterion's
/// (ungated) Hungarian assignment.
struct MetricEval {
  Metric metric = Metric::kContour;
  double gate = 0.0;
  ErrorCounts totals;
  std::vector<SceneCounts> per_scene;  // sorted by scene_id
  EvalPools pools;
  std::vector<DistanceBinStats> distance_stats;  // over gated matches
  std::vector<CountBin> distance_counts;
  std::vector<CountBin> yaw_counts;
  std::optional<QuadrantSummary> quadrants;       // over assigned pairs
  std::optional<CorrelationSummary> correlations;  // assigned, CE window
};

struct EvalReport {
  std::string class_label;
  int dimension = 3;
  Perspective perspective = Perspective::kEgoCentric;
  std::vector<MetricEval> per_metric;
};

/// Runs the full gated pipeline (per frame: cost matrix, Hungarian
/// assignment, threshold gate, accumulation) for every requested metric.
/// Scenes are processed independently (possibly concurrently) and merged
/// in scene_id order, so results are deterministic.
/// Throws std::invalid_argument on configuration errors, including an
/// unknown class with no explicit gate.
EvalReport evaluate(const std::vector<Scene>& scenes, const EvalConfig& config);

/// All Hungarian-assigned pairs of one criterion's run, gated or not, in
/// deterministic order. This is the record pool behind the
/// threshold-independent analyses (scatter, correlation, quadrants).
std::vector<MetricRecord> assigned_records(const MetricEval& eval);

/// Dimension of the first box found in `scenes`; 0 when there is none.
int dataset_dimension(const std::vector<Scene>& scenes);

/// Resolves the effective evaluation dimension and projects 3D scenes to
/// their BEV footprint when a 2D evaluation was requested. Throws when a
/// 3D evaluation is requested on 2D data.
std::vector<Scene> prepare_scenes(const std::vector<Scene>& scenes,
                                  std::optional<int> requested_dimension,
                                  int* effective_dimension);

}  // namespace cetrack

#endif  // CETRACK_EVAL_HPP_
