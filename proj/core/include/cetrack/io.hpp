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

#ifndef CETRACK_IO_HPP_
#define CETRACK_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cetrack/eval.hpp"
#include "cetrack/frame.hpp"

namespace cetrack {

/// Input rejection with the offending source and 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& message);
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// Parses a frame stream: one JSON object per line, schema
///   {"scene_id": str, "frame_index": int, "timestamp": float,
///    "ego": {"x","y","z"?,"yaw"},
///    "gt":   [{"id","class","center":[..],"size":[..],"yaw"}, ...],
///    "pred": [{"id","class","center":[..],"size":[..],"yaw","score"?}, ...]}
/// Angles are radians, distances meters; center/size carry 2 or 3 entries
/// and fix the file's dimension. Frames are grouped into scenes in order
/// of first appearance; frame_index must strictly increase within a scene,
/// track ids must be unique per side per frame, and all boxes in a file
/// must share one dimension. Violations raise ParseError with the line.
std::vector<Scene> parse_frames(std::istream& input,
                                const std::string& source_name = "<stream>");

std::vector<Scene> load_frames(const std::filesystem::path& path);

/// Canonical serialization of the frame-stream format; parse_frames is its
/// inverse for valid inputs.
std::string frames_to_jsonl(const std::vector<Scene>& scenes);

/// Scene-selection criteria: a scene is kept iff some matched pair of the
/// class exceeds the yaw-error floor, some GT of the class comes closer to
/// the ego than the proximity ceiling, and the scene is long enough.
struct SceneFilter {
  double min_yaw_error_deg = 10.0;
  double max_proximity = 30.0;
  int min_frames = 10;
};

/// Order-preserving selection. Matching for the yaw criterion runs the
/// contour-error pipeline gated at the class default (or the override).
/// Throws std::invalid_argument on non-positive thresholds or when no gate
/// is available for the class.
std::vector<Scene> filter_scenes(const std::vector<Scene>& scenes,
                                 const SceneFilter& filter,
                                 const std::string& class_label,
                                 std::optional<double> ce_gate_override = {},
                                 Perspective perspective =
                                     Perspective::kEgoCentric,
                                 std::optional<int> dimension = {});

/// Shortest round-trip decimal form of a double (deterministic).
std::string format_double(double value);

// --- Report serialization -------------------------------------------------
//
// Structured exports are JSON documents with a stable key order and a
// schema_version field; tabular exports are CSV with a header row. Exports
// are byte-identical across runs for identical inputs.

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

/// One row per scene and criterion plus an "ALL" aggregate row:
/// metric,scene_id,ftp,ffp,ffn,fid,failures,ftpr
std::string report_to_csv(const EvalReport& report);

/// One row per criterion and ego-distance bin with functional counts and
/// per-bin statistics of the gated matches.
std::string distance_bins_to_csv(const EvalReport& report);
/// One row per criterion and yaw-severity bin with functional counts.
std::string yaw_bins_to_csv(const EvalReport& report);
std::string bins_to_json(const EvalReport& report, const std::string& by);

std::string quadrants_to_json(const std::string& class_label,
                              const QuadrantSummary& summary);
std::string quadrants_to_csv(const std::string& class_label,
                             const QuadrantSummary& summary);

std::string correlations_to_json(const std::string& class_label,
                                 const CorrelationSummary& summary);
std::string correlations_to_csv(const std::string& class_label,
                                const CorrelationSummary& summary);

/// Per-match scatter rows: metric_x,metric_y,class,gt_to_ego
std::string scatter_csv(const std::vector<MetricRecord>& records,
                        MetricField x, MetricField y);

}  // namespace cetrack

#endif  // CETRACK_IO_HPP_
