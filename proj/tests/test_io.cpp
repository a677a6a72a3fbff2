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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cetrack/io.hpp"

using namespace cetrack;

namespace {

const char* kValidLine =
    R"({"scene_id":"s1","frame_index":0,"timestamp":0.0,)"
    R"("ego":{"x":0,"y":0,"z":0,"yaw":0},)"
    R"("gt":[{"id":"g1","class":"car","center":[10,0,0.5],"size":[4.5,2,1.6],"yaw":0}],)"
    R"("pred":[{"id":"p1","class":"car","center":[10.1,0,0.5],"size":[4.4,2,1.6],"yaw":0.02,"score":0.9}]})";

std::vector<Scene> parse_text(const std::string& text) {
  std::istringstream stream(text);
  return parse_frames(stream, "test.jsonl");
}

int error_line(const std::string& text) {
  std::istringstream stream(text);
  try {
    parse_frames(stream, "test.jsonl");
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

Scene synthetic_scene(const std::string& id, int frames, double gt_distance,
                      double yaw_error_deg) {
  Scene scene;
  scene.id = id;
  for (int i = 0; i < frames; ++i) {
    Frame frame;
    frame.scene_id = id;
    frame.frame_index = i;
    frame.timestamp = 0.5 * i;
    frame.ego = EgoPose{point3(0, 0, 0), 0.0};
    frame.gt.push_back(TrackedObject{
        "g1", "car", make_box3(gt_distance, 0, 0.5, 4.5, 2, 1.6, 0.0), {}});
    frame.pred.push_back(TrackedObject{
        "p1", "car",
        make_box3(gt_distance, 0, 0.5, 4.5, 2, 1.6,
                  rad_from_deg(yaw_error_deg)),
        {}});
    scene.frames.push_back(std::move(frame));
  }
  return scene;
}

}  // namespace

TEST_CASE("empty input parses to no scenes") {
  CHECK(parse_text("").empty());
  CHECK(parse_text("\n  \n").empty());
}

TEST_CASE("a single valid line yields one scene with one frame") {
  const std::vector<Scene> scenes = parse_text(kValidLine);
  REQUIRE(scenes.size() == 1);
  CHECK(scenes[0].id == "s1");
  REQUIRE(scenes[0].frames.size() == 1);
  const Frame& frame = scenes[0].frames[0];
  CHECK(frame.gt.size() == 1);
  CHECK(frame.pred.size() == 1);
  CHECK(frame.gt[0].box.dim() == 3);
  CHECK(frame.pred[0].score.has_value());
  CHECK(*frame.pred[0].score == 0.9);
  CHECK(frame.gt[0].box.length == 4.5);
}

TEST_CASE("parser rejects malformed input with the offending line") {
  // Duplicate GT id.
  const std::string dup =
      R"({"scene_id":"s","frame_index":0,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},)"
      R"("gt":[{"id":"g","class":"car","center":[0,0],"size":[4,2],"yaw":0},)"
      R"({"id":"g","class":"car","center":[5,0],"size":[4,2],"yaw":0}],"pred":[]})";
  CHECK(error_line(dup) == 1);

  // Broken JSON on the second line.
  CHECK(error_line(std::string(kValidLine) + "\n{not json") == 2);

  // frame_index going backwards within a scene.
  const std::string backwards = std::string(kValidLine) + "\n" + kValidLine;
  CHECK(error_line(backwards) == 2);

  // Mixed 2D and 3D boxes in one file.
  const std::string mixed =
      std::string(kValidLine) + "\n" +
      R"({"scene_id":"s2","frame_index":0,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},)"
      R"("gt":[{"id":"g","class":"car","center":[0,0],"size":[4,2],"yaw":0}],"pred":[]})";
  CHECK(error_line(mixed) == 2);

  // Non-positive extents.
  const std::string flat_box =
      R"({"scene_id":"s","frame_index":0,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},)"
      R"("gt":[{"id":"g","class":"car","center":[0,0],"size":[0,2],"yaw":0}],"pred":[]})";
  CHECK(error_line(flat_box) == 1);

  // Score outside [0, 1].
  const std::string bad_score =
      R"({"scene_id":"s","frame_index":0,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},)"
      R"("gt":[],"pred":[{"id":"p","class":"car","center":[0,0],"size":[4,2],"yaw":0,"score":1.5}]})";
  CHECK(error_line(bad_score) == 1);

  // Missing required fields.
  CHECK(error_line(R"({"scene_id":"s"})") == 1);
  CHECK(error_line(
            R"({"scene_id":"s","frame_index":-1,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},"gt":[],"pred":[]})") ==
        1);
}

TEST_CASE("interleaved scenes group by first appearance") {
  const std::string interleaved =
      R"({"scene_id":"a","frame_index":0,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},"gt":[],"pred":[]})"
      "\n"
      R"({"scene_id":"b","frame_index":0,"timestamp":0,"ego":{"x":0,"y":0,"yaw":0},"gt":[],"pred":[]})"
      "\n"
      R"({"scene_id":"a","frame_index":1,"timestamp":1,"ego":{"x":0,"y":0,"yaw":0},"gt":[],"pred":[]})";
  const std::vector<Scene> scenes = parse_text(interleaved);
  REQUIRE(scenes.size() == 2);
  CHECK(scenes[0].id == "a");
  CHECK(scenes[0].frames.size() == 2);
  CHECK(scenes[1].id == "b");
}

TEST_CASE("serialize-parse round trip is stable") {
  const std::string two_d =
      R"({"scene_id":"s","frame_index":0,"timestamp":0.25,"ego":{"x":1.5,"y":-2,"yaw":0.3},)"
      R"("gt":[{"id":"g","class":"pedestrian","center":[3.25,4.5],"size":[0.8,0.6],"yaw":1.1}],)"
      R"("pred":[{"id":"p","class":"pedestrian","center":[3.3,4.4],"size":[0.7,0.6],"yaw":1.0,"score":0.5}]})";
  for (const std::string& input : {std::string(kValidLine), two_d}) {
    const std::string first = frames_to_jsonl(parse_text(input));
    const std::string second = frames_to_jsonl(parse_text(first));
    CHECK(first == second);
  }
}

TEST_CASE("scene filtering applies all three criteria") {
  std::vector<Scene> corpus;
  corpus.push_back(synthetic_scene("good-a", 12, 20.0, 15.0));
  corpus.push_back(synthetic_scene("short", 8, 20.0, 15.0));
  corpus.push_back(synthetic_scene("aligned", 12, 20.0, 5.0));
  corpus.push_back(synthetic_scene("far", 12, 50.0, 15.0));
  corpus.push_back(synthetic_scene("good-b", 15, 10.0, 20.0));

  const SceneFilter filter;  // defaults: >10 deg, <30 m, >=10 frames
  const std::vector<Scene> selected = filter_scenes(corpus, filter, "car");
  REQUIRE(selected.size() == 2);
  CHECK(selected[0].id == "good-a");  // input order preserved
  CHECK(selected[1].id == "good-b");

  // Idempotent: filtering the selection again changes nothing.
  const std::vector<Scene> again = filter_scenes(selected, filter, "car");
  REQUIRE(again.size() == 2);
  CHECK(again[0].id == "good-a");
  CHECK(again[1].id == "good-b");

  SceneFilter bad;
  bad.min_frames = 0;
  CHECK_THROWS_AS(filter_scenes(corpus, bad, "car"), std::invalid_argument);
}

TEST_CASE("an empty evaluation still exports a valid document") {
  EvalConfig config;
  config.threads = 1;
  const EvalReport report = evaluate({}, config);
  const std::string json = report_to_json(report);
  const EvalReport parsed = report_from_json(json);
  CHECK(report_to_json(parsed) == json);
  CHECK(parsed.per_metric.size() == 3);
  CHECK(parsed.per_metric[0].totals.ftp == 0);
  CHECK(!parsed.per_metric[0].totals.ftpr().has_value());
}

TEST_CASE("report exports round-trip and stay byte-identical") {
  std::vector<Scene> scenes;
  scenes.push_back(synthetic_scene("s1", 4, 12.0, 3.0));
  scenes.push_back(synthetic_scene("s0", 3, 25.0, 12.0));
  EvalConfig config;
  const EvalReport first = evaluate(scenes, config);
  const EvalReport second = evaluate(scenes, config);
  const std::string json_first = report_to_json(first);
  CHECK(json_first == report_to_json(second));
  CHECK(report_to_csv(first) == report_to_csv(second));

  // Scenes merge sorted by id regardless of input order.
  CHECK(first.per_metric[0].per_scene[0].scene_id == "s0");

  const EvalReport reparsed = report_from_json(json_first);
  CHECK(report_to_json(reparsed) == json_first);
  CHECK(report_to_csv(reparsed) == report_to_csv(first));
}

TEST_CASE("tabular exports carry one row per bin") {
  std::vector<Scene> scenes;
  scenes.push_back(synthetic_scene("s1", 3, 12.0, 3.0));
  EvalConfig config;
  config.metrics = {Metric::kContour};
  config.distance_edges = {0.0, 15.0};
  const EvalReport report = evaluate(scenes, config);
  const std::string csv = distance_bins_to_csv(report);
  const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 3);  // header + 2 bins

  const std::string yaw_csv = yaw_bins_to_csv(report);
  CHECK(std::count(yaw_csv.begin(), yaw_csv.end(), '\n') == 4);  // header + 3
}

TEST_CASE("scatter export schema") {
  std::vector<MetricRecord> records(2);
  records[0].ce = 1.5;
  records[0].iou = 0.25;
  records[0].class_label = "car";
  records[0].gt_to_ego = 12.0;
  records[1].ce = 0.5;
  records[1].iou = 0.75;
  records[1].class_label = "car";
  records[1].gt_to_ego = 30.0;
  const std::string csv =
      scatter_csv(records, MetricField::kCe, MetricField::kIou);
  CHECK(csv ==
        "metric_x,metric_y,class,gt_to_ego\n"
        "1.5,0.25,car,12\n"
        "0.5,0.75,car,30\n");
}

TEST_CASE("format_double is shortest-round-trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(100.0) == "100");
}
