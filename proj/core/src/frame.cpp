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

#include "cetrack/frame.hpp"

namespace cetrack {

Frame filter_frame_to_class(const Frame& frame,
                            const std::string& class_label) {
  if (class_label.empty()) return frame;
  Frame out;
  out.scene_id = frame.scene_id;
  out.frame_index = frame.frame_index;
  out.timestamp = frame.timestamp;
  out.ego = frame.ego;
  for (const TrackedObject& obj : frame.gt) {
    if (obj.class_label == class_label) out.gt.push_back(obj);
  }
  for (const TrackedObject& obj : frame.pred) {
    if (obj.class_label == class_label) out.pred.push_back(obj);
  }
  return out;
}

}  // namespace cetrack
