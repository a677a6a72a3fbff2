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

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace oracle {

namespace {

using cetrack::ContourConfig;
using cetrack::CostMatrix;
using cetrack::EgoPose;
using cetrack::OrientedBox;
using cetrack::Perspective;
using cetrack::Point;

struct V3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

V3 sub(const V3& a, const V3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(const V3& a, const V3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
double norm(const V3& a) { return std::sqrt(dot(a, a)); }

// Corner layout recomputed from scratch (same convention as the library
// documents: counterclockwise, bottom face then top face).
std::vector<V3> raw_corners(const OrientedBox& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  const double lx[4] = {hl, -hl, -hl, hl};
  const double ly[4] = {hw, hw, -hw, -hw};
  std::vector<V3> out;
  if (box.dim() == 2) {
    for (int i = 0; i < 4; ++i) {
      out.push_back({box.center.x + c * lx[i] - s * ly[i],
                     box.center.y + s * lx[i] + c * ly[i], 0.0});
    }
  } else {
    const double hh = 0.5 * box.height;
    for (double zsign : {-1.0, 1.0}) {
      for (int i = 0; i < 4; ++i) {
        out.push_back({box.center.x + c * lx[i] - s * ly[i],
                       box.center.y + s * lx[i] + c * ly[i],
                       box.center.z + zsign * hh});
      }
    }
  }
  return out;
}

}  // namespace

bool box_contains(const OrientedBox& box, const Point& p, double tolerance) {
  const std::vector<V3> cs = raw_corners(box);
  const V3 q{p.x, p.y, p.z};
  // Footprint: left-of-every-edge test on the counterclockwise bottom ring.
  for (int i = 0; i < 4; ++i) {
    const V3& a = cs[i];
    const V3& b = cs[(i + 1) % 4];
    const double cross =
        (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
    const double edge_len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross < -tolerance * edge_len) return false;
  }
  if (box.dim() == 3) {
    double z_lo = cs[0].z, z_hi = cs[0].z;
    for (const V3& c : cs) {
      z_lo = std::min(z_lo, c.z);
      z_hi = std::max(z_hi, c.z);
    }
    if (p.z < z_lo - tolerance || p.z > z_hi + tolerance) return false;
  }
  return true;
}

namespace {

// Minimum distance from q to the segment a-b via a zoom-refined 1D grid.
double min_dist_on_segment(const V3& q, const V3& a, const V3& b,
                           int grid, int rounds) {
  double lo = 0.0, hi = 1.0;
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int round = 0; round < rounds; ++round) {
    for (int i = 0; i <= grid; ++i) {
      const double t = lo + (hi - lo) * i / grid;
      const V3 pt{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y),
                  a.z + t * (b.z - a.z)};
      const double d = norm(sub(q, pt));
      if (d < best) {
        best = d;
        best_t = t;
      }
    }
    const double step = (hi - lo) / grid;
    lo = std::max(0.0, best_t - step);
    hi = std::min(1.0, best_t + step);
  }
  return best;
}

// Minimum distance from q to the rectangle spanned by origin->u and
// origin->v, again by a zoom-refined 2D grid.
double min_dist_on_face(const V3& q, const V3& origin, const V3& u,
                        const V3& v, int grid, int rounds) {
  double lo_s = 0.0, hi_s = 1.0, lo_t = 0.0, hi_t = 1.0;
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0, best_t = 0.0;
  for (int round = 0; round < rounds; ++round) {
    for (int i = 0; i <= grid; ++i) {
      const double s = lo_s + (hi_s - lo_s) * i / grid;
      for (int j = 0; j <= grid; ++j) {
        const double t = lo_t + (hi_t - lo_t) * j / grid;
        const V3 pt{origin.x + s * u.x + t * v.x,
                    origin.y + s * u.y + t * v.y,
                    origin.z + s * u.z + t * v.z};
        const double d = norm(sub(q, pt));
        if (d < best) {
          best = d;
          best_s = s;
          best_t = t;
        }
      }
    }
    const double step_s = (hi_s - lo_s) / grid;
    const double step_t = (hi_t - lo_t) / grid;
    lo_s = std::max(0.0, best_s - step_s);
    hi_s = std::min(1.0, best_s + step_s);
    lo_t = std::max(0.0, best_t - step_t);
    hi_t = std::min(1.0, best_t + step_t);
  }
  return best;
}

}  // namespace

double point_to_box_distance_sampled(const Point& p, const OrientedBox& box) {
  if (box_contains(box, p, 1e-12)) return 0.0;
  const std::vector<V3> cs = raw_corners(box);
  const V3 q{p.x, p.y, p.z};
  double best = std::numeric_limits<double>::infinity();
  if (box.dim() == 2) {
    // 4 edges x 5 rounds x 4097 samples each: > 1e5 sampled points/query.
    for (int i = 0; i < 4; ++i) {
      best = std::min(best,
                      min_dist_on_segment(q, cs[i], cs[(i + 1) % 4], 4096, 5));
    }
    return best;
  }
  // 6 faces x 5 rounds x 65^2 samples each: > 1e5 sampled points/query.
  static constexpr int kFaces[6][3] = {
      // origin corner, corner along u, corner along v
      {0, 1, 3},  // bottom
      {4, 5, 7},  // top
      {0, 1, 4},  // sides
      {1, 2, 5},
      {2, 3, 6},
      {3, 0, 7},
  };
  for (const auto& f : kFaces) {
    const V3& origin = cs[f[0]];
    const V3 u = sub(cs[f[1]], origin);
    const V3 v = sub(cs[f[2]], origin);
    best = std::min(best, min_dist_on_face(q, origin, u, v, 64, 5));
  }
  return best;
}

double contour_error_brute(const OrientedBox& gt, const OrientedBox& pred,
                           const std::optional<EgoPose>& ego,
                           const ContourConfig& config) {
  auto selected = [&](const OrientedBox& box) {
    const std::vector<V3> all = raw_corners(box);
    if (config.perspective == Perspective::kObjectCentric) return all;
    if (!ego.has_value()) {
      throw std::invalid_argument("oracle: ego required in ego-centric mode");
    }
    const V3 e{ego->position.x, ego->position.y, ego->position.z};
    std::vector<std::pair<double, int>> ranked;
    for (std::size_t i = 0; i < all.size(); ++i) {
      ranked.emplace_back(norm(sub(all[i], e)), static_cast<int>(i));
    }
    std::sort(ranked.begin(), ranked.end());
    const int count = config.dimension == 2 ? 3 : 6;
    std::vector<V3> out;
    for (int i = 0; i < count; ++i) out.push_back(all[ranked[i].second]);
    return out;
  };

  auto to_point = [&](const V3& v) {
    return config.dimension == 2 ? cetrack::point2(v.x, v.y)
                                 : cetrack::point3(v.x, v.y, v.z);
  };

  double worst = 0.0;
  for (const V3& corner : selected(pred)) {
    worst = std::max(worst,
                     point_to_box_distance_sampled(to_point(corner), gt));
  }
  for (const V3& corner : selected(gt)) {
    worst = std::max(worst,
                     point_to_box_distance_sampled(to_point(corner), pred));
  }
  return worst;
}

double iou_monte_carlo(const OrientedBox& a, const OrientedBox& b,
                       std::size_t samples, std::uint64_t seed) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("oracle: dimension mismatch");
  }
  V3 lo{std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity()};
  V3 hi{-lo.x, -lo.y, -lo.z};
  for (const OrientedBox* box : {&a, &b}) {
    for (const V3& c : raw_corners(*box)) {
      lo.x = std::min(lo.x, c.x);
      lo.y = std::min(lo.y, c.y);
      lo.z = std::min(lo.z, c.z);
      hi.x = std::max(hi.x, c.x);
      hi.y = std::max(hi.y, c.y);
      hi.z = std::max(hi.z, c.z);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  std::uniform_real_distribution<double> uz(lo.z, hi.z);

  std::size_t in_either = 0;
  std::size_t in_both = 0;
  const bool three_d = a.dim() == 3;
  for (std::size_t i = 0; i < samples; ++i) {
    Point p = three_d ? cetrack::point3(ux(rng), uy(rng), uz(rng))
                      : cetrack::point2(ux(rng), uy(rng));
    const bool in_a = box_contains(a, p, 0.0);
    const bool in_b = box_contains(b, p, 0.0);
    if (in_a || in_b) ++in_either;
    if (in_a && in_b) ++in_both;
  }
  if (in_either == 0) return 0.0;
  return static_cast<double>(in_both) / static_cast<double>(in_either);
}

double min_assignment_cost_brute(const CostMatrix& costs) {
  const int n = costs.rows();
  const int m = costs.cols();
  if (n == 0 || m == 0) return 0.0;
  const bool transposed = n > m;
  const int rows = transposed ? m : n;
  const int cols = transposed ? n : m;
  auto cost_at = [&](int r, int c) {
    return transposed ? costs.at(c, r) : costs.at(r, c);
  };
  std::vector<int> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int r = 0; r < rows; ++r) total += cost_at(r, perm[r]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double mean_recomputed(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty sample");
  }
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double median_recomputed(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double pearson_recomputed(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("pearson: bad sample");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
    syy += ys[i] * ys[i];
  }
  const double num = n * sxy - sx * sy;
  const double den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return num / den;
}

}  // namespace oracle
