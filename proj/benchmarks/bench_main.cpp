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

#include <optional>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cetrack/assignment.hpp"
#include "cetrack/contour.hpp"
#include "cetrack/geometry.hpp"

namespace {

using namespace cetrack;

OrientedBox random_box(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> center(-20.0, 20.0);
  std::uniform_real_distribution<double> extent(0.5, 6.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  if (dim == 2) {
    return make_box2(center(rng), center(rng), extent(rng), extent(rng),
                     angle(rng));
  }
  return make_box3(center(rng), center(rng), 0.5 * center(rng), extent(rng),
                   extent(rng), extent(rng), angle(rng));
}

void BM_PointToBoxDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const OrientedBox box = random_box(rng, 3);
  const Point p = point3(7.0, -3.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(point_to_box_distance(p, box));
  }
}
BENCHMARK(BM_PointToBoxDistance);

void BM_ContourError(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const OrientedBox gt = random_box(rng, dim);
  OrientedBox pred = gt;
  pred.center.x += 0.8;
  pred.yaw = normalize_angle(pred.yaw + 0.2);
  const std::optional<EgoPose> ego(
      EgoPose{dim == 2 ? point2(-30, 2) : point3(-30, 2, 0), 0.0});
  const ContourConfig config{dim, Perspective::kEgoCentric};
  for (auto _ : state) {
    benchmark::DoNotOptimize(contour_error(gt, pred, ego, config));
  }
}
BENCHMARK(BM_ContourError)->Arg(2)->Arg(3);

void BM_OrientedIoU(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const OrientedBox a = random_box(rng, dim);
  OrientedBox b = a;
  b.center.x += 0.5;
  b.yaw = normalize_angle(b.yaw + 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iou(a, b));
  }
}
BENCHMARK(BM_OrientedIoU)->Arg(2)->Arg(3);

void BM_Hungarian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  CostMatrix costs(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) costs.at(i, j) = value(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(hungarian(costs));
  }
}
BENCHMARK(BM_Hungarian)->Arg(5)->Arg(20)->Arg(50)->Arg(100);

void BM_FrameAssociation(benchmark::State& state) {
  const int objects = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  Frame frame;
  frame.scene_id = "bench";
  frame.ego = EgoPose{point3(0, 0, 0), 0.0};
  for (int i = 0; i < objects; ++i) {
    const OrientedBox gt = random_box(rng, 3);
    OrientedBox pred = gt;
    pred.center.y += 0.3;
    frame.gt.push_back({"g" + std::to_string(i), "car", gt, {}});
    frame.pred.push_back({"p" + std::to_string(i), "car", pred, {}});
  }
  const ContourConfig config{3, Perspective::kEgoCentric};
  for (auto _ : state) {
    const CostMatrix costs = build_cost_matrix(frame, Metric::kContour, config);
    const auto assignment = hungarian(costs);
    benchmark::DoNotOptimize(
        gate_matches(assignment, costs, Metric::kContour, 2.5));
  }
}
BENCHMARK(BM_FrameAssociation)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
