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

#include "cetrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace cetrack {

namespace {

// Half-open binning: edges are ascending lower bounds, last bin unbounded.
// Returns -1 for values below the first edge.
int bin_index(double value, const std::vector<double>& edges) {
  if (edges.empty() || value < edges.front()) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  return static_cast<int>(it - edges.begin()) - 1;
}

double bin_hi(std::size_t index, const std::vector<double>& edges) {
  return index + 1 < edges.size()
             ? edges[index + 1]
             : std::numeric_limits<double>::infinity();
}

FieldStats summarize(std::vector<double>& values) {
  FieldStats stats;
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  stats.median = (n % 2 == 1) ? values[n / 2]
                              : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return stats;
}

}  // namespace

double tde(const OrientedBox& gt, const OrientedBox& pred,
           const EgoPose& ego) {
  const double d_gt = distance(gt.center, ego.position);
  const double d_pred = distance(pred.center, ego.position);
  return std::abs(d_gt - d_pred);
}

double yaw_error_deg(const OrientedBox& gt, const OrientedBox& pred) {
  return deg_from_rad(angular_difference(gt.yaw, pred.yaw));
}

double eod(const OrientedBox& gt, const OrientedBox& pred,
           const EgoPose& ego) {
  const double d_gt = distance(gt.center, ego.position);
  if (d_gt <= 0.0) {
    throw std::invalid_argument(
        "eod: GT center coincides with the ego position");
  }
  return yaw_error_deg(gt, pred) / d_gt;
}

MetricRecord make_record(const Frame& frame, const TrackedObject& gt,
                         const TrackedObject& pred,
                         const ContourConfig& config) {
  MetricRecord r;
  r.scene_id = frame.scene_id;
  r.frame_index = frame.frame_index;
  r.gt_id = gt.track_id;
  r.pred_id = pred.track_id;
  r.class_label = gt.class_label;
  const std::optional<EgoPose> ego(frame.ego);
  r.ce = contour_error(gt.box, pred.box, ego, config);
  r.iou = iou(gt.box, pred.box);
  r.cpd = cpd(gt.box, pred.box);
  r.tde = tde(gt.box, pred.box, frame.ego);
  r.gt_to_ego = distance(gt.box.center, frame.ego.position);
  r.yaw_error = yaw_error_deg(gt.box, pred.box);
  r.eod = eod(gt.box, pred.box, frame.ego);
  return r;
}

std::optional<double> ErrorCounts::ftpr() const {
  const std::int64_t denom = ftp + failures();
  if (denom <= 0) return std::nullopt;
  return 100.0 * static_cast<double>(ftp) / static_cast<double>(denom);
}

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& other) {
  ftp += other.ftp;
  ffp += other.ffp;
  ffn += other.ffn;
  fid += other.fid;
  return *this;
}

FrameOutcome accumulate_frame(const MatchResult& match, const Frame& frame,
                              AssignmentHistory& history,
                              const ContourConfig& config) {
  FrameOutcome out;
  out.counts.ftp = static_cast<std::int64_t>(match.matched.size());
  out.counts.ffn = static_cast<std::int64_t>(match.unmatched_gt.size());
  out.counts.ffp = static_cast<std::int64_t>(match.unmatched_pred.size());

  for (const MatchedPair& pair : match.matched) {
    const TrackedObject& gt = frame.gt[pair.gt_index];
    const TrackedObject& pred = frame.pred[pair.pred_index];
    const auto it = history.find(gt.track_id);
    if (it != history.end() && it->second != pred.track_id) {
      ++out.counts.fid;
    }
    history[gt.track_id] = pred.track_id;
    out.matched.push_back(make_record(frame, gt, pred, config));
  }

  std::unordered_set<int> paired_gt;
  std::unordered_set<int> paired_pred;
  for (const MatchedPair& pair : match.rejected) {
    paired_gt.insert(pair.gt_index);
    paired_pred.insert(pair.pred_index);
    const TrackedObject& gt = frame.gt[pair.gt_index];
    const TrackedObject& pred = frame.pred[pair.pred_index];
    out.rejected.push_back(
        {make_record(frame, gt, pred, config),
         distance(pred.box.center, frame.ego.position)});
  }
  for (int idx : match.unmatched_gt) {
    if (paired_gt.count(idx)) continue;
    out.unassigned_gt_distance.push_back(
        distance(frame.gt[idx].box.center, frame.ego.position));
  }
  for (int idx : match.unmatched_pred) {
    if (paired_pred.count(idx)) continue;
    out.unassigned_pred_distance.push_back(
        distance(frame.pred[idx].box.center, frame.ego.position));
  }
  return out;
}

QuadrantCounts quadrant_classify(const std::vector<MetricRecord>& records,
                                 double tau_ce, double tau_iou) {
  QuadrantCounts q;
  for (const MetricRecord& r : records) {
    const bool ce_ok = r.ce <= tau_ce;
    const bool iou_ok = r.iou > tau_iou;
    if (ce_ok && iou_ok) {
      ++q.reliable;
    } else if (ce_ok) {
      ++q.contour_based;
    } else if (iou_ok) {
      ++q.iou_based;
    } else {
      ++q.poor;
    }
  }
  return q;
}

std::vector<DistanceBinStats> bin_by_distance(
    const std::vector<MetricRecord>& records,
    const std::vector<double>& edges) {
  if (edges.empty()) {
    throw std::invalid_argument("bin_by_distance: edges must be non-empty");
  }
  static constexpr MetricField kFields[] = {MetricField::kCe, MetricField::kIou,
                                            MetricField::kCpd, MetricField::kTde,
                                            MetricField::kEod};
  std::vector<std::vector<const MetricRecord*>> buckets(edges.size());
  for (const MetricRecord& r : records) {
    const int idx = bin_index(r.gt_to_ego, edges);
    if (idx >= 0) buckets[idx].push_back(&r);
  }
  std::vector<DistanceBinStats> bins(edges.size());
  for (std::size_t b = 0; b < edges.size(); ++b) {
    bins[b].lo = edges[b];
    bins[b].hi = bin_hi(b, edges);
    bins[b].count = static_cast<std::int64_t>(buckets[b].size());
    for (MetricField f : kFields) {
      std::vector<double> values;
      values.reserve(buckets[b].size());
      for (const MetricRecord* r : buckets[b]) {
        values.push_back(field_value(*r, f));
      }
      bins[b].stats[std::string(field_name(f))] = summarize(values);
    }
  }
  return bins;
}

void EvalPools::append(FrameOutcome&& outcome) {
  std::move(outcome.matched.begin(), outcome.matched.end(),
            std::back_inserter(matched));
  std::move(outcome.rejected.begin(), outcome.rejected.end(),
            std::back_inserter(rejected));
  unassigned_gt_distance.insert(unassigned_gt_distance.end(),
                                outcome.unassigned_gt_distance.begin(),
                                outcome.unassigned_gt_distance.end());
  unassigned_pred_distance.insert(unassigned_pred_distance.end(),
                                  outcome.unassigned_pred_distance.begin(),
                                  outcome.unassigned_pred_distance.end());
}

namespace {

std::vector<CountBin> make_count_bins(const std::vector<double>& edges) {
  if (edges.empty()) {
    throw std::invalid_argument("bin_counts: edges must be non-empty");
  }
  std::vector<CountBin> bins(edges.size());
  for (std::size_t b = 0; b < edges.size(); ++b) {
    bins[b].lo = edges[b];
    bins[b].hi = bin_hi(b, edges);
  }
  return bins;
}

}  // namespace

std::vector<CountBin> bin_counts_by_distance(const EvalPools& pools,
                                             const std::vector<double>& edges) {
  std::vector<CountBin> bins = make_count_bins(edges);
  auto add = [&](double value, std::int64_t ErrorCounts::*slot) {
    const int idx = bin_index(value, edges);
    if (idx >= 0) ++(bins[idx].counts.*slot);
  };
  for (const MetricRecord& r : pools.matched) {
    add(r.gt_to_ego, &ErrorCounts::ftp);
  }
  for (const RejectedPair& r : pools.rejected) {
    add(r.record.gt_to_ego, &ErrorCounts::ffn);
    add(r.pred_to_ego, &ErrorCounts::ffp);
  }
  for (double d : pools.unassigned_gt_distance) add(d, &ErrorCounts::ffn);
  for (double d : pools.unassigned_pred_distance) add(d, &ErrorCounts::ffp);
  return bins;
}

std::vector<CountBin> bin_counts_by_yaw(const EvalPools& pools,
                                        const std::vector<double>& edges_deg) {
  std::vector<CountBin> bins = make_count_bins(edges_deg);
  for (const MetricRecord& r : pools.matched) {
    const int idx = bin_index(r.yaw_error, edges_deg);
    if (idx >= 0) ++bins[idx].counts.ftp;
  }
  for (const RejectedPair& r : pools.rejected) {
    const int idx = bin_index(r.record.yaw_error, edges_deg);
    if (idx >= 0) {
      ++bins[idx].counts.ffn;
      ++bins[idx].counts.ffp;
    }
  }
  return bins;
}

std::string_view field_name(MetricField f) {
  switch (f) {
    case MetricField::kCe: return "ce";
    case MetricField::kIou: return "iou";
    case MetricField::kCpd: return "cpd";
    case MetricField::kTde: return "tde";
    case MetricField::kEod: return "eod";
    case MetricField::kGtToEgo: return "gt_to_ego";
    case MetricField::kYawError: return "yaw_error";
  }
  return "unknown";
}

std::optional<MetricField> field_from_name(std::string_view name) {
  if (name == "ce") return MetricField::kCe;
  if (name == "iou") return MetricField::kIou;
  if (name == "cpd") return MetricField::kCpd;
  if (name == "tde") return MetricField::kTde;
  if (name == "eod") return MetricField::kEod;
  if (name == "gt_to_ego") return MetricField::kGtToEgo;
  if (name == "yaw_error") return MetricField::kYawError;
  return std::nullopt;
}

double field_value(const MetricRecord& record, MetricField field) {
  switch (field) {
    case MetricField::kCe: return record.ce;
    case MetricField::kIou: return record.iou;
    case MetricField::kCpd: return record.cpd;
    case MetricField::kTde: return record.tde;
    case MetricField::kEod: return record.eod;
    case MetricField::kGtToEgo: return record.gt_to_ego;
    case MetricField::kYawError: return record.yaw_error;
  }
  return 0.0;
}

double correlate(const std::vector<MetricRecord>& records, MetricField x,
                 MetricField y) {
  const std::size_t n = records.size();
  if (n < 2) {
    throw std::invalid_argument("correlate: need at least two records");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const MetricRecord& r : records) {
    mean_x += field_value(r, x);
    mean_y += field_value(r, y);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (const MetricRecord& r : records) {
    const double dx = field_value(r, x) - mean_x;
    const double dy = field_value(r, y) - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument(
        "correlate: zero variance makes the correlation undefined");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace cetrack
