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

#include "cetrack/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace cetrack {

using nlohmann::ordered_json;

ParseError::ParseError(std::string source, int line,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

namespace {

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& message) {
  throw ParseError(source, line, message);
}

double require_number(const ordered_json& j, const char* key,
                      const std::string& source, int line) {
  if (!j.contains(key) || !j[key].is_number()) {
    fail(source, line, std::string("missing or non-numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

std::string require_string(const ordered_json& j, const char* key,
                           const std::string& source, int line) {
  if (!j.contains(key) || !j[key].is_string()) {
    fail(source, line, std::string("missing or non-string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

std::vector<double> require_coords(const ordered_json& j, const char* key,
                                   const std::string& source, int line) {
  if (!j.contains(key) || !j[key].is_array()) {
    fail(source, line, std::string("missing or non-array field '") + key + "'");
  }
  const auto& arr = j[key];
  if (arr.size() != 2 && arr.size() != 3) {
    fail(source, line,
         std::string("field '") + key + "' must hold 2 or 3 numbers");
  }
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) {
      fail(source, line, std::string("field '") + key + "' must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

struct RawEgo {
  double x = 0.0, y = 0.0, z = 0.0, yaw = 0.0;
};

TrackedObject parse_object(const ordered_json& j, bool is_prediction,
                           int& file_dim, const std::string& source, int line) {
  TrackedObject obj;
  obj.track_id = require_string(j, "id", source, line);
  obj.class_label = require_string(j, "class", source, line);
  const std::vector<double> center = require_coords(j, "center", source, line);
  const std::vector<double> size = require_coords(j, "size", source, line);
  if (center.size() != size.size()) {
    fail(source, line, "object center and size dimensions differ");
  }
  const int dim = static_cast<int>(center.size());
  if (file_dim == 0) {
    file_dim = dim;
  } else if (file_dim != dim) {
    fail(source, line,
         "mixed box dimensions in one file (" + std::to_string(file_dim) +
             "D and " + std::to_string(dim) + "D)");
  }
  const double yaw = require_number(j, "yaw", source, line);
  if (!std::isfinite(yaw)) fail(source, line, "non-finite yaw");
  try {
    obj.box = dim == 2 ? make_box2(center[0], center[1], size[0], size[1], yaw)
                       : make_box3(center[0], center[1], center[2], size[0],
                                   size[1], size[2], yaw);
  } catch (const std::invalid_argument& e) {
    fail(source, line, e.what());
  }
  if (is_prediction && j.contains("score") && !j["score"].is_null()) {
    if (!j["score"].is_number()) fail(source, line, "non-numeric score");
    const double score = j["score"].get<double>();
    if (score < 0.0 || score > 1.0) {
      fail(source, line, "score outside [0, 1]");
    }
    obj.score = score;
  }
  return obj;
}

void check_unique_ids(const std::vector<TrackedObject>& objs, const char* side,
                      const std::string& source, int line) {
  std::unordered_set<std::string> seen;
  for (const auto& obj : objs) {
    if (!seen.insert(obj.track_id).second) {
      fail(source, line, std::string("duplicate ") + side + " track id '" +
                             obj.track_id + "'");
    }
  }
}

}  // namespace

std::vector<Scene> parse_frames(std::istream& input,
                                const std::string& source_name) {
  std::vector<Scene> scenes;
  std::unordered_map<std::string, std::size_t> scene_index;
  std::vector<RawEgo> raw_egos;  // parallel to parsed frames, fixed up after
  int file_dim = 0;

  std::string text;
  int line = 0;
  std::vector<std::pair<std::size_t, std::size_t>> frame_slots;  // scene, frame
  while (std::getline(input, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;

    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(source_name, line, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(source_name, line, "frame line is not an object");

    Frame frame;
    frame.scene_id = require_string(j, "scene_id", source_name, line);
    if (!j.contains("frame_index") || !j["frame_index"].is_number_integer()) {
      fail(source_name, line, "missing or non-integer field 'frame_index'");
    }
    frame.frame_index = j["frame_index"].get<std::int64_t>();
    if (frame.frame_index < 0) fail(source_name, line, "negative frame_index");
    frame.timestamp = require_number(j, "timestamp", source_name, line);

    if (!j.contains("ego") || !j["ego"].is_object()) {
      fail(source_name, line, "missing or non-object field 'ego'");
    }
    RawEgo ego;
    ego.x = require_number(j["ego"], "x", source_name, line);
    ego.y = require_number(j["ego"], "y", source_name, line);
    if (j["ego"].contains("z") && !j["ego"]["z"].is_null()) {
      if (!j["ego"]["z"].is_number()) fail(source_name, line, "non-numeric ego z");
      ego.z = j["ego"]["z"].get<double>();
    }
    ego.yaw = require_number(j["ego"], "yaw", source_name, line);

    for (const char* side : {"gt", "pred"}) {
      if (!j.contains(side) || !j[side].is_array()) {
        fail(source_name, line,
             std::string("missing or non-array field '") + side + "'");
      }
      const bool is_prediction = std::string_view(side) == "pred";
      auto& dst = is_prediction ? frame.pred : frame.gt;
      for (const auto& entry : j[side]) {
        if (!entry.is_object()) {
          fail(source_name, line, std::string(side) + " entry is not an object");
        }
        dst.push_back(
            parse_object(entry, is_prediction, file_dim, source_name, line));
      }
      check_unique_ids(dst, side, source_name, line);
    }

    auto [it, inserted] =
        scene_index.try_emplace(frame.scene_id, scenes.size());
    if (inserted) scenes.push_back(Scene{frame.scene_id, {}});
    Scene& scene = scenes[it->second];
    if (!scene.frames.empty() &&
        scene.frames.back().frame_index >= frame.frame_index) {
      fail(source_name, line,
           "frame_index not strictly increasing within scene '" +
               frame.scene_id + "'");
    }
    scene.frames.push_back(std::move(frame));
    frame_slots.emplace_back(it->second, scene.frames.size() - 1);
    raw_egos.push_back(ego);
  }

  // The file's dimension is only certain once every line is read (leading
  // frames may carry no boxes), so ego poses are materialized last.
  const int dim = file_dim == 0 ? 3 : file_dim;
  for (std::size_t i = 0; i < frame_slots.size(); ++i) {
    const RawEgo& e = raw_egos[i];
    Frame& f = scenes[frame_slots[i].first].frames[frame_slots[i].second];
    f.ego = dim == 2 ? EgoPose{point2(e.x, e.y), normalize_angle(e.yaw)}
                     : EgoPose{point3(e.x, e.y, e.z), normalize_angle(e.yaw)};
  }
  return scenes;
}

std::vector<Scene> load_frames(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open input file: " + path.string());
  }
  return parse_frames(file, path.string());
}

namespace {

ordered_json object_to_json(const TrackedObject& obj) {
  ordered_json j;
  j["id"] = obj.track_id;
  j["class"] = obj.class_label;
  const OrientedBox& b = obj.box;
  if (b.dim() == 2) {
    j["center"] = {b.center.x, b.center.y};
    j["size"] = {b.length, b.width};
  } else {
    j["center"] = {b.center.x, b.center.y, b.center.z};
    j["size"] = {b.length, b.width, b.height};
  }
  j["yaw"] = b.yaw;
  if (obj.score) j["score"] = *obj.score;
  return j;
}

}  // namespace

std::string frames_to_jsonl(const std::vector<Scene>& scenes) {
  std::string out;
  for (const Scene& scene : scenes) {
    for (const Frame& frame : scene.frames) {
      ordered_json j;
      j["scene_id"] = frame.scene_id;
      j["frame_index"] = frame.frame_index;
      j["timestamp"] = frame.timestamp;
      ordered_json ego;
      ego["x"] = frame.ego.position.x;
      ego["y"] = frame.ego.position.y;
      if (frame.ego.position.dim == 3) ego["z"] = frame.ego.position.z;
      ego["yaw"] = frame.ego.yaw;
      j["ego"] = std::move(ego);
      j["gt"] = ordered_json::array();
      for (const TrackedObject& obj : frame.gt) {
        j["gt"].push_back(object_to_json(obj));
      }
      j["pred"] = ordered_json::array();
      for (const TrackedObject& obj : frame.pred) {
        j["pred"].push_back(object_to_json(obj));
      }
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

std::vector<Scene> filter_scenes(const std::vector<Scene>& scenes,
                                 const SceneFilter& filter,
                                 const std::string& class_label,
                                 std::optional<double> ce_gate_override,
                                 Perspective perspective,
                                 std::optional<int> dimension) {
  if (!(filter.min_yaw_error_deg > 0.0) || !(filter.max_proximity > 0.0) ||
      filter.min_frames <= 0) {
    throw std::invalid_argument("filter_scenes: thresholds must be positive");
  }

  EvalConfig config;
  config.class_label = class_label;
  config.metrics = {Metric::kContour};
  config.gate_override = ce_gate_override;
  config.perspective = perspective;
  config.dimension = dimension;
  config.threads = 1;

  std::vector<Scene> selected;
  for (const Scene& scene : scenes) {
    if (static_cast<int>(scene.frames.size()) < filter.min_frames) continue;

    bool near_gt = false;
    for (const Frame& frame : scene.frames) {
      for (const TrackedObject& obj : frame.gt) {
        if (obj.class_label != class_label) continue;
        if (distance(obj.box.center, frame.ego.position) <
            filter.max_proximity) {
          near_gt = true;
          break;
        }
      }
      if (near_gt) break;
    }
    if (!near_gt) continue;

    const EvalReport report = evaluate({scene}, config);
    bool has_yaw_outlier = false;
    for (const MetricRecord& r : report.per_metric.front().pools.matched) {
      if (r.yaw_error > filter.min_yaw_error_deg) {
        has_yaw_outlier = true;
        break;
      }
    }
    if (has_yaw_outlier) selected.push_back(scene);
  }
  return selected;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

// --- Report serialization ---------------------------------------------------

namespace {

ordered_json opt_to_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::optional<double> opt_from_json(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ordered_json hi_to_json(double hi) {
  if (std::isinf(hi)) return nullptr;
  return hi;
}

double hi_from_json(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

ordered_json counts_to_json(const ErrorCounts& c) {
  ordered_json j;
  j["ftp"] = c.ftp;
  j["ffp"] = c.ffp;
  j["ffn"] = c.ffn;
  j["fid"] = c.fid;
  j["failures"] = c.failures();
  j["ftpr"] = opt_to_json(c.ftpr());
  return j;
}

ErrorCounts counts_from_json(const ordered_json& j) {
  ErrorCounts c;
  c.ftp = j.at("ftp").get<std::int64_t>();
  c.ffp = j.at("ffp").get<std::int64_t>();
  c.ffn = j.at("ffn").get<std::int64_t>();
  c.fid = j.value("fid", std::int64_t{0});
  return c;
}

ordered_json record_to_json(const MetricRecord& r) {
  ordered_json j;
  j["scene_id"] = r.scene_id;
  j["frame_index"] = r.frame_index;
  j["gt_id"] = r.gt_id;
  j["pred_id"] = r.pred_id;
  j["class"] = r.class_label;
  j["ce"] = r.ce;
  j["iou"] = r.iou;
  j["cpd"] = r.cpd;
  j["tde"] = r.tde;
  j["eod"] = r.eod;
  j["gt_to_ego"] = r.gt_to_ego;
  j["yaw_error"] = r.yaw_error;
  return j;
}

MetricRecord record_from_json(const ordered_json& j) {
  MetricRecord r;
  r.scene_id = j.at("scene_id").get<std::string>();
  r.frame_index = j.at("frame_index").get<std::int64_t>();
  r.gt_id = j.at("gt_id").get<std::string>();
  r.pred_id = j.at("pred_id").get<std::string>();
  r.class_label = j.at("class").get<std::string>();
  r.ce = j.at("ce").get<double>();
  r.iou = j.at("iou").get<double>();
  r.cpd = j.at("cpd").get<double>();
  r.tde = j.at("tde").get<double>();
  r.eod = j.at("eod").get<double>();
  r.gt_to_ego = j.at("gt_to_ego").get<double>();
  r.yaw_error = j.at("yaw_error").get<double>();
  return r;
}

ordered_json quadrants_json(const QuadrantSummary& q) {
  ordered_json j;
  j["ce_threshold"] = q.ce_threshold;
  j["iou_threshold"] = q.iou_threshold;
  j["total"] = q.counts.total();
  j["reliable"] = q.counts.reliable;
  j["contour_based"] = q.counts.contour_based;
  j["poor"] = q.counts.poor;
  j["iou_based"] = q.counts.iou_based;
  return j;
}

QuadrantSummary quadrants_from_json(const ordered_json& j) {
  QuadrantSummary q;
  q.ce_threshold = j.at("ce_threshold").get<double>();
  q.iou_threshold = j.at("iou_threshold").get<double>();
  q.counts.reliable = j.at("reliable").get<std::int64_t>();
  q.counts.contour_based = j.at("contour_based").get<std::int64_t>();
  q.counts.poor = j.at("poor").get<std::int64_t>();
  q.counts.iou_based = j.at("iou_based").get<std::int64_t>();
  return q;
}

ordered_json correlations_json(const CorrelationSummary& c) {
  ordered_json j;
  j["ce_window"] = c.ce_window;
  j["count"] = c.count;
  j["ce_iou"] = opt_to_json(c.ce_iou);
  j["ce_cpd"] = opt_to_json(c.ce_cpd);
  j["iou_cpd"] = opt_to_json(c.iou_cpd);
  return j;
}

CorrelationSummary correlations_from_json(const ordered_json& j) {
  CorrelationSummary c;
  c.ce_window = j.at("ce_window").get<double>();
  c.count = j.at("count").get<std::int64_t>();
  c.ce_iou = opt_from_json(j.at("ce_iou"));
  c.ce_cpd = opt_from_json(j.at("ce_cpd"));
  c.iou_cpd = opt_from_json(j.at("iou_cpd"));
  return c;
}

ordered_json distance_bin_json(const DistanceBinStats& stats,
                               const CountBin& counts) {
  ordered_json j;
  j["lo"] = stats.lo;
  j["hi"] = hi_to_json(stats.hi);
  j["count"] = stats.count;
  j["ftp"] = counts.counts.ftp;
  j["ffp"] = counts.counts.ffp;
  j["ffn"] = counts.counts.ffn;
  j["failures"] = counts.counts.failures();
  j["ftpr"] = opt_to_json(counts.counts.ftpr());
  ordered_json s;
  for (const auto& [name, field] : stats.stats) {
    ordered_json f;
    f["mean"] = opt_to_json(field.mean);
    f["median"] = opt_to_json(field.median);
    s[name] = std::move(f);
  }
  j["stats"] = std::move(s);
  return j;
}

ordered_json yaw_bin_json(const CountBin& bin) {
  ordered_json j;
  j["lo"] = bin.lo;
  j["hi"] = hi_to_json(bin.hi);
  j["ftp"] = bin.counts.ftp;
  j["ffp"] = bin.counts.ffp;
  j["ffn"] = bin.counts.ffn;
  j["failures"] = bin.counts.failures();
  j["ftpr"] = opt_to_json(bin.counts.ftpr());
  return j;
}

ordered_json metric_eval_to_json(const MetricEval& eval) {
  ordered_json j;
  j["metric"] = std::string(metric_name(eval.metric));
  j["gate"] = eval.gate;
  j["totals"] = counts_to_json(eval.totals);
  j["per_scene"] = ordered_json::array();
  for (const SceneCounts& sc : eval.per_scene) {
    ordered_json s = counts_to_json(sc.counts);
    ordered_json row;
    row["scene_id"] = sc.scene_id;
    for (auto& [k, v] : s.items()) row[k] = v;
    j["per_scene"].push_back(std::move(row));
  }
  j["distance_bins"] = ordered_json::array();
  for (std::size_t b = 0; b < eval.distance_stats.size(); ++b) {
    j["distance_bins"].push_back(
        distance_bin_json(eval.distance_stats[b], eval.distance_counts[b]));
  }
  j["yaw_bins"] = ordered_json::array();
  for (const CountBin& bin : eval.yaw_counts) {
    j["yaw_bins"].push_back(yaw_bin_json(bin));
  }
  j["quadrants"] =
      eval.quadrants ? quadrants_json(*eval.quadrants) : ordered_json(nullptr);
  j["correlations"] = eval.correlations
                          ? correlations_json(*eval.correlations)
                          : ordered_json(nullptr);
  j["matched_records"] = ordered_json::array();
  for (const MetricRecord& r : eval.pools.matched) {
    j["matched_records"].push_back(record_to_json(r));
  }
  j["rejected_records"] = ordered_json::array();
  for (const RejectedPair& r : eval.pools.rejected) {
    ordered_json row = record_to_json(r.record);
    row["pred_to_ego"] = r.pred_to_ego;
    j["rejected_records"].push_back(std::move(row));
  }
  j["unassigned_gt_distances"] = eval.pools.unassigned_gt_distance;
  j["unassigned_pred_distances"] = eval.pools.unassigned_pred_distance;
  return j;
}

MetricEval metric_eval_from_json(const ordered_json& j) {
  MetricEval eval;
  const auto metric = metric_from_name(j.at("metric").get<std::string>());
  if (!metric) throw std::runtime_error("report: unknown metric name");
  eval.metric = *metric;
  eval.gate = j.at("gate").get<double>();
  eval.totals = counts_from_json(j.at("totals"));
  for (const auto& row : j.at("per_scene")) {
    eval.per_scene.push_back(
        {row.at("scene_id").get<std::string>(), counts_from_json(row)});
  }
  for (const auto& bin : j.at("distance_bins")) {
    DistanceBinStats stats;
    stats.lo = bin.at("lo").get<double>();
    stats.hi = hi_from_json(bin.at("hi"));
    stats.count = bin.at("count").get<std::int64_t>();
    for (const auto& [name, field] : bin.at("stats").items()) {
      FieldStats fs;
      fs.mean = opt_from_json(field.at("mean"));
      fs.median = opt_from_json(field.at("median"));
      stats.stats[name] = fs;
    }
    eval.distance_stats.push_back(std::move(stats));
    CountBin counts;
    counts.lo = bin.at("lo").get<double>();
    counts.hi = hi_from_json(bin.at("hi"));
    counts.counts = counts_from_json(bin);
    eval.distance_counts.push_back(counts);
  }
  for (const auto& bin : j.at("yaw_bins")) {
    CountBin counts;
    counts.lo = bin.at("lo").get<double>();
    counts.hi = hi_from_json(bin.at("hi"));
    counts.counts = counts_from_json(bin);
    eval.yaw_counts.push_back(counts);
  }
  if (!j.at("quadrants").is_null()) {
    eval.quadrants = quadrants_from_json(j.at("quadrants"));
  }
  if (!j.at("correlations").is_null()) {
    eval.correlations = correlations_from_json(j.at("correlations"));
  }
  for (const auto& row : j.at("matched_records")) {
    eval.pools.matched.push_back(record_from_json(row));
  }
  for (const auto& row : j.at("rejected_records")) {
    eval.pools.rejected.push_back(
        {record_from_json(row), row.at("pred_to_ego").get<double>()});
  }
  eval.pools.unassigned_gt_distance =
      j.at("unassigned_gt_distances").get<std::vector<double>>();
  eval.pools.unassigned_pred_distance =
      j.at("unassigned_pred_distances").get<std::vector<double>>();
  return eval;
}

constexpr int kSchemaVersion = 1;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string hi_field(double hi) {
  return std::isinf(hi) ? std::string("inf") : format_double(hi);
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "cetrack";
  j["kind"] = "evaluation";
  j["class"] = report.class_label;
  j["dimension"] = report.dimension;
  j["perspective"] = std::string(perspective_name(report.perspective));
  j["metrics"] = ordered_json::array();
  for (const MetricEval& eval : report.per_metric) {
    j["metrics"].push_back(metric_eval_to_json(eval));
  }
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  if (j.value("kind", std::string()) != "evaluation") {
    throw std::runtime_error("report: not an evaluation document");
  }
  EvalReport report;
  report.class_label = j.at("class").get<std::string>();
  report.dimension = j.at("dimension").get<int>();
  const auto perspective =
      perspective_from_name(j.at("perspective").get<std::string>());
  if (!perspective) throw std::runtime_error("report: unknown perspective");
  report.perspective = *perspective;
  for (const auto& entry : j.at("metrics")) {
    report.per_metric.push_back(metric_eval_from_json(entry));
  }
  return report;
}

std::string report_to_csv(const EvalReport& report) {
  std::string out = "metric,scene_id,ftp,ffp,ffn,fid,failures,ftpr\n";
  for (const MetricEval& eval : report.per_metric) {
    const std::string name(metric_name(eval.metric));
    auto row = [&](const std::string& scene, const ErrorCounts& c) {
      out += name + ',' + csv_field(scene) + ',' + std::to_string(c.ftp) +
             ',' + std::to_string(c.ffp) + ',' + std::to_string(c.ffn) + ',' +
             std::to_string(c.fid) + ',' + std::to_string(c.failures()) + ',' +
             opt_field(c.ftpr()) + '\n';
    };
    for (const SceneCounts& sc : eval.per_scene) row(sc.scene_id, sc.counts);
    row("ALL", eval.totals);
  }
  return out;
}

std::string distance_bins_to_csv(const EvalReport& report) {
  std::string out =
      "metric,bin_lo,bin_hi,count,ftp,ffp,ffn,failures,ftpr,"
      "ce_mean,ce_median,iou_mean,iou_median,cpd_mean,cpd_median,"
      "tde_mean,tde_median,eod_mean,eod_median\n";
  static constexpr const char* kOrder[] = {"ce", "iou", "cpd", "tde", "eod"};
  for (const MetricEval& eval : report.per_metric) {
    for (std::size_t b = 0; b < eval.distance_stats.size(); ++b) {
      const DistanceBinStats& stats = eval.distance_stats[b];
      const ErrorCounts& c = eval.distance_counts[b].counts;
      out += std::string(metric_name(eval.metric)) + ',' +
             format_double(stats.lo) + ',' + hi_field(stats.hi) + ',' +
             std::to_string(stats.count) + ',' + std::to_string(c.ftp) + ',' +
             std::to_string(c.ffp) + ',' + std::to_string(c.ffn) + ',' +
             std::to_string(c.failures()) + ',' + opt_field(c.ftpr());
      for (const char* key : kOrder) {
        const auto it = stats.stats.find(key);
        const FieldStats fs = it == stats.stats.end() ? FieldStats{} : it->second;
        out += ',' + opt_field(fs.mean) + ',' + opt_field(fs.median);
      }
      out += '\n';
    }
  }
  return out;
}

std::string yaw_bins_to_csv(const EvalReport& report) {
  std::string out = "metric,bin_lo,bin_hi,ftp,ffp,ffn,failures,ftpr\n";
  for (const MetricEval& eval : report.per_metric) {
    for (const CountBin& bin : eval.yaw_counts) {
      const ErrorCounts& c = bin.counts;
      out += std::string(metric_name(eval.metric)) + ',' +
             format_double(bin.lo) + ',' + hi_field(bin.hi) + ',' +
             std::to_string(c.ftp) + ',' + std::to_string(c.ffp) + ',' +
             std::to_string(c.ffn) + ',' + std::to_string(c.failures()) + ',' +
             opt_field(c.ftpr()) + '\n';
    }
  }
  return out;
}

std::string bins_to_json(const EvalReport& report, const std::string& by) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "cetrack";
  j["kind"] = "bins";
  j["by"] = by;
  j["class"] = report.class_label;
  j["dimension"] = report.dimension;
  j["metrics"] = ordered_json::array();
  for (const MetricEval& eval : report.per_metric) {
    ordered_json entry;
    entry["metric"] = std::string(metric_name(eval.metric));
    entry["gate"] = eval.gate;
    entry["bins"] = ordered_json::array();
    if (by == "yaw") {
      for (const CountBin& bin : eval.yaw_counts) {
        entry["bins"].push_back(yaw_bin_json(bin));
      }
    } else {
      for (std::size_t b = 0; b < eval.distance_stats.size(); ++b) {
        entry["bins"].push_back(distance_bin_json(eval.distance_stats[b],
                                                  eval.distance_counts[b]));
      }
    }
    j["metrics"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

std::string quadrants_to_json(const std::string& class_label,
                              const QuadrantSummary& summary) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "cetrack";
  j["kind"] = "quadrants";
  j["class"] = class_label;
  const ordered_json body = quadrants_json(summary);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string quadrants_to_csv(const std::string& class_label,
                             const QuadrantSummary& summary) {
  const QuadrantCounts& q = summary.counts;
  const double total = static_cast<double>(q.total());
  auto pct = [&](std::int64_t v) {
    return total > 0 ? format_double(100.0 * static_cast<double>(v) / total)
                     : std::string();
  };
  std::string out =
      "class,ce_threshold,iou_threshold,total,reliable,contour_based,poor,"
      "iou_based,reliable_pct,contour_based_pct,poor_pct,iou_based_pct\n";
  out += csv_field(class_label) + ',' + format_double(summary.ce_threshold) +
         ',' + format_double(summary.iou_threshold) + ',' +
         std::to_string(q.total()) + ',' + std::to_string(q.reliable) + ',' +
         std::to_string(q.contour_based) + ',' + std::to_string(q.poor) + ',' +
         std::to_string(q.iou_based) + ',' + pct(q.reliable) + ',' +
         pct(q.contour_based) + ',' + pct(q.poor) + ',' + pct(q.iou_based) +
         '\n';
  return out;
}

std::string correlations_to_json(const std::string& class_label,
                                 const CorrelationSummary& summary) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "cetrack";
  j["kind"] = "correlations";
  j["class"] = class_label;
  const ordered_json body = correlations_json(summary);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string correlations_to_csv(const std::string& class_label,
                                const CorrelationSummary& summary) {
  std::string out = "class,ce_window,count,pair,r\n";
  const std::pair<const char*, std::optional<double>> rows[] = {
      {"ce_iou", summary.ce_iou},
      {"ce_cpd", summary.ce_cpd},
      {"iou_cpd", summary.iou_cpd},
  };
  for (const auto& [pair, value] : rows) {
    out += csv_field(class_label) + ',' + format_double(summary.ce_window) +
           ',' + std::to_string(summary.count) + ',' + pair + ',' +
           opt_field(value) + '\n';
  }
  return out;
}

std::string scatter_csv(const std::vector<MetricRecord>& records,
                        MetricField x, MetricField y) {
  std::string out = "metric_x,metric_y,class,gt_to_ego\n";
  for (const MetricRecord& r : records) {
    out += format_double(field_value(r, x)) + ',' +
           format_double(field_value(r, y)) + ',' + csv_field(r.class_label) +
           ',' + format_double(r.gt_to_ego) + '\n';
  }
  return out;
}

}  // namespace cetrack
