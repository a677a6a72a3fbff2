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

#ifndef CETRACK_METRICS_HPP_
#define CETRACK_METRICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cetrack/assignment.hpp"
#include "cetrack/contour.hpp"
#include "cetrack/frame.hpp"

namespace cetrack {

/// Translational distance error: absolute difference between the GT-to-ego
/// and prediction-to-ego center distances, in meters.
double tde(const OrientedBox& gt, const OrientedBox& pred, const EgoPose& ego);

/// Ego-centric orientation divergence: wrapped absolute yaw error in
/// degrees divided by the GT-to-ego distance in meters. Throws
/// std::invalid_argument when the GT center coincides with the ego
/// position (zero distance is treated as a data fault, not infinity).
double eod(const OrientedBox& gt, const OrientedBox& pred, const EgoPose& ego);

/// Wrapped absolute yaw difference in degrees, in [0, 180].
double yaw_error_deg(const OrientedBox& gt, const OrientedBox& pred);

/// Full metric vector of one GT/prediction pair.
struct MetricRecord {
  std::string scene_id;
  std::int64_t frame_index = 0;
  std::string gt_id;
  std::string pred_id;
  std::string class_label;
  double ce = 0.0;         // meters
  double iou = 0.0;        // [0, 1]
  double cpd = 0.0;        // meters
  double tde = 0.0;        // meters
  double eod = 0.0;        // degrees per meter
  double gt_to_ego = 0.0;  // meters
  double yaw_error = 0.0;  // degrees, [0, 180]
};

MetricRecord make_record(const Frame& frame, const TrackedObject& gt,
                         const TrackedObject& pred,
                         const ContourConfig& config);

/// Functional error counts. A gated-out assigned pair contributes one FFN
/// (its GT side) and one FFP (its prediction side); `failures` is their sum.
struct ErrorCounts {
  std::int64_t ftp = 0;
  std::int64_t ffp = 0;
  std::int64_t ffn = 0;
  std::int64_t fid = 0;

  std::int64_t failures() const { return ffp + ffn; }
  /// 100 * ftp / (ftp + failures); empty when the denominator is zero.
  std::optional<double> ftpr() const;
  ErrorCounts& operator+=(const ErrorCounts& other);
};

/// Last matched prediction ID per GT track, carried across the frames of
/// one scene. Gaps (frames where the GT went unmatched) are tolerated.
using AssignmentHistory = std::map<std::string, std::string>;

/// An assigned pair that failed the gate. Kept with its prediction-to-ego
/// distance so failures can be binned by proximity on both sides.
struct RejectedPair {
  MetricRecord record;
  double pred_to_ego = 0.0;
};

struct FrameOutcome {
  ErrorCounts counts;
  std::vector<MetricRecord> matched;
  std::vector<RejectedPair> rejected;
  std::vector<double> unassigned_gt_distance;    // ego distance per GT with no assigned partner
  std::vector<double> unassigned_pred_distance;  // same for predictions
};

/// Folds one frame's gated match result into functional error counts and
/// per-pair records. An ID switch is counted when a GT track's matched
/// prediction differs from the prediction it most recently matched.
FrameOutcome accumulate_frame(const MatchResult& match, const Frame& frame,
                              AssignmentHistory& history,
                              const ContourConfig& config);

/// Table of match quality, splitting pairs by a CE and an IoU threshold.
struct QuadrantCounts {
  std::int64_t reliable = 0;       // CE <= tau_ce and IoU >  tau_iou
  std::int64_t contour_based = 0;  // CE <= tau_ce and IoU <= tau_iou
  std::int64_t poor = 0;           // CE >  tau_ce and IoU <= tau_iou
  std::int64_t iou_based = 0;      // CE >  tau_ce and IoU >  tau_iou

  std::int64_t total() const {
    return reliable + contour_based + poor + iou_based;
  }
};

QuadrantCounts quadrant_classify(const std::vector<MetricRecord>& records,
                                 double tau_ce, double tau_iou);

struct FieldStats {
  std::optional<double> mean;
  std::optional<double> median;
};

/// One half-open distance bin [lo, hi) with per-metric summary statistics
/// over the records that fell into it. The last bin's hi is +infinity.
struct DistanceBinStats {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t count = 0;
  std::map<std::string, FieldStats> stats;  // keys: ce, iou, cpd, tde, eod
};

/// Bins records by GT-to-ego distance. `edges` are ascending bin lower
/// bounds; the last bin is unbounded above. Empty bins report null stats.
std::vector<DistanceBinStats> bin_by_distance(
    const std::vector<MetricRecord>& records,
    const std::vector<double>& edges = {0.0, 10.0, 20.0, 30.0});

/// Functional counts per bin (used for both proximity and yaw severity
/// tables). fid is not binned and stays 0 here.
struct CountBin {
  double lo = 0.0;
  double hi = 0.0;
  ErrorCounts counts;
};

/// Everything one gated evaluation produced, pooled over frames and scenes.
struct EvalPools {
  std::vector<MetricRecord> matched;
  std::vector<RejectedPair> rejected;
  std::vector<double> unassigned_gt_distance;
  std::vector<double> unassigned_pred_distance;

  void append(FrameOutcome&& outcome);
};

/// FTP/FFP/FFN per ego-distance bin. Matched pairs and FFN sides bin by the
/// GT-to-ego distance; FFP sides bin by the prediction-to-ego distance.
std::vector<CountBin> bin_counts_by_distance(
    const EvalPools& pools,
    const std::vector<double>& edges = {0.0, 10.0, 20.0, 30.0});

/// FTP/FFP/FFN per yaw-error bin (degrees). Only assigned pairs carry a yaw
/// error, so wholly unassigned objects are not represented here.
std::vector<CountBin> bin_counts_by_yaw(
    const EvalPools& pools,
    const std::vector<double>& edges_deg = {0.0, 10.0, 30.0});

enum class MetricField { kCe, kIou, kCpd, kTde, kEod, kGtToEgo, kYawError };

std::string_view field_name(MetricField f);
std::optional<MetricField> field_from_name(std::string_view name);
double field_value(const MetricRecord& record, MetricField field);

/// Sample Pearson correlation of two record fields, clamped to [-1, 1].
/// Throws std::invalid_argument with fewer than two records or when either
/// field has zero variance.
double correlate(const std::vector<MetricRecord>& records, MetricField x,
                 MetricField y);

}  // namespace cetrack

#endif  // CETRACK_METRICS_HPP_
