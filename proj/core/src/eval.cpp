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

#include "cetrack/eval.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace cetrack {

std::optional<ClassThresholds> default_thresholds(
    std::string_view class_label) {
  if (class_label == "pedestrian") {
    return ClassThresholds{1.0, 2.0, 0.5, 0.61};
  }
  if (class_label == "car") {
    return ClassThresholds{2.5, 2.0, 0.7, 2.01};
  }
  if (class_label == "truck") {
    return ClassThresholds{3.5, 2.0, 0.7, 2.16};
  }
  return std::nullopt;
}

int dataset_dimension(const std::vector<Scene>& scenes) {
  for (const Scene& scene : scenes) {
    for (const Frame& frame : scene.frames) {
      if (!frame.gt.empty()) return frame.gt.front().box.dim();
      if (!frame.pred.empty()) return frame.pred.front().box.dim();
    }
  }
  return 0;
}

std::vector<Scene> prepare_scenes(const std::vector<Scene>& scenes,
                                  std::optional<int> requested_dimension,
                                  int* effective_dimension) {
  if (requested_dimension && *requested_dimension != 2 &&
      *requested_dimension != 3) {
    throw std::invalid_argument("dimension must be 2 or 3");
  }
  const int data_dim = dataset_dimension(scenes);
  const int effective =
      requested_dimension.value_or(data_dim == 0 ? 3 : data_dim);
  if (effective == 3 && data_dim == 2) {
    throw std::invalid_argument(
        "cannot evaluate 2D data in 3D mode; pass dimension 2");
  }
  if (effective_dimension != nullptr) *effective_dimension = effective;
  if (effective == data_dim || data_dim == 0) return scenes;

  // 2D evaluation of 3D data: drop to the BEV footprint.
  std::vector<Scene> projected = scenes;
  for (Scene& scene : projected) {
    for (Frame& frame : scene.frames) {
      frame.ego = bev_footprint(frame.ego);
      for (TrackedObject& obj : frame.gt) obj.box = bev_footprint(obj.box);
      for (TrackedObject& obj : frame.pred) obj.box = bev_footprint(obj.box);
    }
  }
  return projected;
}

namespace {

struct ResolvedMetric {
  Metric metric;
  double gate;
};

std::vector<ResolvedMetric> resolve_gates(const EvalConfig& config) {
  if (config.metrics.empty()) {
    throw std::invalid_argument("no matching criterion selected");
  }
  std::set<Metric> seen;
  for (Metric m : config.metrics) {
    if (!seen.insert(m).second) {
      throw std::invalid_argument("duplicate matching criterion selected");
    }
  }
  if (config.gate_override && config.metrics.size() != 1) {
    throw std::invalid_argument(
        "an explicit threshold requires exactly one matching criterion");
  }
  const std::optional<ClassThresholds> defaults =
      default_thresholds(config.class_label);
  std::vector<ResolvedMetric> out;
  for (Metric m : config.metrics) {
    double gate = 0.0;
    if (config.gate_override) {
      gate = *config.gate_override;
    } else if (defaults) {
      switch (m) {
        case Metric::kContour: gate = defaults->ce_gate; break;
        case Metric::kIou: gate = defaults->iou_gate; break;
        case Metric::kCpd: gate = defaults->cpd_gate; break;
      }
    } else {
      throw std::invalid_argument(
          "no default thresholds for class '" + config.class_label +
          "'; pass an explicit threshold");
    }
    out.push_back({m, gate});
  }
  return out;
}

struct ScenePartial {
  std::string scene_id;
  std::vector<ErrorCounts> counts;  // indexed like resolved metrics
  std::vector<EvalPools> pools;
};

ScenePartial evaluate_scene(const Scene& scene,
                            const std::vector<ResolvedMetric>& metrics,
                            const EvalConfig& config,
                            const ContourConfig& contour_config) {
  ScenePartial partial;
  partial.scene_id = scene.id;
  partial.counts.resize(metrics.size());
  partial.pools.resize(metrics.size());
  std::vector<AssignmentHistory> histories(metrics.size());

  for (const Frame& raw_frame : scene.frames) {
    const Frame frame = filter_frame_to_class(raw_frame, config.class_label);
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      const CostMatrix costs =
          build_cost_matrix(frame, metrics[k].metric, contour_config);
      const auto assignment = hungarian(costs);
      const MatchResult match =
          gate_matches(assignment, costs, metrics[k].metric, metrics[k].gate);
      FrameOutcome outcome =
          accumulate_frame(match, frame, histories[k], contour_config);
      partial.counts[k] += outcome.counts;
      partial.pools[k].append(std::move(outcome));
    }
  }
  return partial;
}

std::optional<double> try_correlate(const std::vector<MetricRecord>& records,
                                    MetricField x, MetricField y) {
  try {
    return correlate(records, x, y);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<MetricRecord> assigned_records(const MetricEval& eval) {
  std::vector<MetricRecord> records = eval.pools.matched;
  records.reserve(records.size() + eval.pools.rejected.size());
  for (const RejectedPair& r : eval.pools.rejected) {
    records.push_back(r.record);
  }
  std::sort(records.begin(), records.end(),
            [](const MetricRecord& a, const MetricRecord& b) {
              return std::tie(a.scene_id, a.frame_index, a.gt_id, a.pred_id) <
                     std::tie(b.scene_id, b.frame_index, b.gt_id, b.pred_id);
            });
  return records;
}

EvalReport evaluate(const std::vector<Scene>& scenes,
                    const EvalConfig& config) {
  const std::vector<ResolvedMetric> metrics = resolve_gates(config);

  int effective_dim = 3;
  const std::vector<Scene> prepared =
      prepare_scenes(scenes, config.dimension, &effective_dim);

  ContourConfig contour_config;
  contour_config.dimension = effective_dim;
  contour_config.perspective = config.perspective;

  // Scenes are independent; fan out across workers and merge in a fixed
  // order afterwards so the report does not depend on scheduling.
  std::vector<ScenePartial> partials(prepared.size());
  const int want = config.threads > 0
                       ? config.threads
                       : static_cast<int>(std::thread::hardware_concurrency());
  const int worker_count = std::max(
      1, std::min<int>(want > 0 ? want : 1,
                       static_cast<int>(prepared.size() == 0 ? 1
                                                             : prepared.size())));
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      partials[i] = evaluate_scene(prepared[i], metrics, config,
                                   contour_config);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= prepared.size()) return;
        try {
          partials[i] = evaluate_scene(prepared[i], metrics, config,
                                       contour_config);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    for (int t = 0; t < worker_count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<std::size_t> order(partials.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return partials[a].scene_id < partials[b].scene_id;
  });

  EvalReport report;
  report.class_label = config.class_label;
  report.dimension = effective_dim;
  report.perspective = config.perspective;

  const std::optional<ClassThresholds> defaults =
      default_thresholds(config.class_label);

  for (std::size_t k = 0; k < metrics.size(); ++k) {
    MetricEval eval;
    eval.metric = metrics[k].metric;
    eval.gate = metrics[k].gate;
    for (std::size_t idx : order) {
      ScenePartial& partial = partials[idx];
      eval.totals += partial.counts[k];
      eval.per_scene.push_back({partial.scene_id, partial.counts[k]});
      EvalPools& pool = partial.pools[k];
      eval.pools.matched.insert(eval.pools.matched.end(),
                                pool.matched.begin(), pool.matched.end());
      eval.pools.rejected.insert(eval.pools.rejected.end(),
                                 pool.rejected.begin(), pool.rejected.end());
      eval.pools.unassigned_gt_distance.insert(
          eval.pools.unassigned_gt_distance.end(),
          pool.unassigned_gt_distance.begin(),
          pool.unassigned_gt_distance.end());
      eval.pools.unassigned_pred_distance.insert(
          eval.pools.unassigned_pred_distance.end(),
          pool.unassigned_pred_distance.begin(),
          pool.unassigned_pred_distance.end());
    }

    eval.distance_stats =
        bin_by_distance(eval.pools.matched, config.distance_edges);
    eval.distance_counts =
        bin_counts_by_distance(eval.pools, config.distance_edges);
    eval.yaw_counts = bin_counts_by_yaw(eval.pools, config.yaw_edges_deg);

    const std::vector<MetricRecord> assigned = assigned_records(eval);
    if (defaults) {
      QuadrantSummary q;
      q.ce_threshold = defaults->ce_gate;
      q.iou_threshold = defaults->iou_gate;
      q.counts = quadrant_classify(assigned, q.ce_threshold, q.iou_threshold);
      eval.quadrants = q;
    }
    const std::optional<double> window =
        config.ce_window ? config.ce_window
                         : (defaults ? std::optional<double>(defaults->ce_window)
                                     : std::nullopt);
    if (window) {
      CorrelationSummary c;
      c.ce_window = *window;
      std::vector<MetricRecord> windowed;
      for (const MetricRecord& r : assigned) {
        if (r.ce <= *window) windowed.push_back(r);
      }
      c.count = static_cast<std::int64_t>(windowed.size());
      c.ce_iou = try_correlate(windowed, MetricField::kCe, MetricField::kIou);
      c.ce_cpd = try_correlate(windowed, MetricField::kCe, MetricField::kCpd);
      c.iou_cpd = try_correlate(windowed, MetricField::kIou, MetricField::kCpd);
      eval.correlations = c;
    }
    report.per_metric.push_back(std::move(eval));
  }
  return report;
}

}  // namespace cetrack
