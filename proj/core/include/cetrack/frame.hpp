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

#ifndef CETRACK_FRAME_HPP_
#define CETRACK_FRAME_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cetrack/geometry.hpp"

namespace cetrack {

/// One annotated or predicted object in a frame. `score` is set for
/// predictions that carry a confidence.
struct TrackedObject {
  std::string track_id;
  std::string class_label;
  OrientedBox box;
  std::optional<double> score;
};

/// One timestamp of a scene: ego pose plus ground-truth and predicted
/// objects, all in one global reference frame.
struct Frame {
  std::string scene_id;
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  EgoPose ego;
  std::vector<TrackedObject> gt;
  std::vector<TrackedObject> pred;
};

struct Scene {
  std::string id;
  std::vector<Frame> frames;
};

/// Copy of `frame` keeping only objects of `class_label` on both sides.
/// An empty label keeps everything.
Frame filter_frame_to_class(const Frame& frame, const std::string& class_label);

}  // namespace cetrack

#endif  // CETRACK_FRAME_HPP_
