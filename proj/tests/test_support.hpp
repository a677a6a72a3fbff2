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

#ifndef CETRACK_TESTS_TEST_SUPPORT_HPP_
#define CETRACK_TESTS_TEST_SUPPORT_HPP_

#include <random>

#include "cetrack/geometry.hpp"

namespace testkit {

/// Deterministic random geometry for property tests. Ranges follow the
/// acceptance setup: centers within +-20 m, extents 0.5-6 m, yaw uniform.
class BoxGen {
 public:
  explicit BoxGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  double gaussian(double sigma) {
    return std::normal_distribution<double>(0.0, sigma)(rng_);
  }

  cetrack::OrientedBox random_box(int dim, double center_range = 20.0,
                                  double min_extent = 0.5,
                                  double max_extent = 6.0) {
    const double cx = uniform(-center_range, center_range);
    const double cy = uniform(-center_range, center_range);
    const double yaw = uniform(-cetrack::kPi, cetrack::kPi);
    const double l = uniform(min_extent, max_extent);
    const double w = uniform(min_extent, max_extent);
    if (dim == 2) return cetrack::make_box2(cx, cy, l, w, yaw);
    const double cz = uniform(-2.0, 2.0);
    const double h = uniform(min_extent, max_extent);
    return cetrack::make_box3(cx, cy, cz, l, w, h, yaw);
  }

  /// A second box near the first, so overlap cases are well represented.
  cetrack::OrientedBox nearby_box(const cetrack::OrientedBox& base,
                                  double center_sigma = 1.0,
                                  double yaw_sigma = 0.5) {
    const double cx = base.center.x + gaussian(center_sigma);
    const double cy = base.center.y + gaussian(center_sigma);
    const double yaw = base.yaw + gaussian(yaw_sigma);
    const double l = uniform(0.5, 6.0);
    const double w = uniform(0.5, 6.0);
    if (base.dim() == 2) return cetrack::make_box2(cx, cy, l, w, yaw);
    const double cz = base.center.z + gaussian(0.3);
    const double h = uniform(0.5, 6.0);
    return cetrack::make_box3(cx, cy, cz, l, w, h, yaw);
  }

  cetrack::EgoPose random_ego(int dim, double range = 30.0) {
    const double x = uniform(-range, range);
    const double y = uniform(-range, range);
    const double yaw = uniform(-cetrack::kPi, cetrack::kPi);
    if (dim == 2) return cetrack::EgoPose{cetrack::point2(x, y), yaw};
    return cetrack::EgoPose{cetrack::point3(x, y, uniform(-1.0, 1.0)), yaw};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testkit

#endif  // CETRACK_TESTS_TEST_SUPPORT_HPP_
