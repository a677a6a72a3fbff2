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

#include "cetrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cetrack {

namespace {

constexpr double kAreaEpsilon = 1e-12;  // m^2 below which an intersection is empty
constexpr double kOnBoxTolerance = 1e-9;  // m; containment and zero-distance agree

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Convex polygon vertices, counterclockwise.
using Polygon = std::vector<Vec2>;

Polygon footprint_polygon(const OrientedBox& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  Polygon poly(4);
  const double lx[4] = {hl, -hl, -hl, hl};
  const double ly[4] = {hw, hw, -hw, -hw};
  for (int i = 0; i < 4; ++i) {
    poly[i].x = box.center.x + c * lx[i] - s * ly[i];
    poly[i].y = box.center.y + s * lx[i] + c * ly[i];
  }
  return poly;
}

double shoelace_area(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += poly[j].x * poly[i].y - poly[i].x * poly[j].y;
  }
  return 0.5 * std::abs(twice);
}

// Sutherland-Hodgman clip of a convex subject polygon against a convex,
// counterclockwise clip polygon.
Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  Polygon output = subject;
  const std::size_t m = clip.size();
  for (std::size_t e2 = 0, e1 = m - 1; e2 < m && !output.empty(); e1 = e2++) {
    const Vec2 a = clip[e1];
    const Vec2 b = clip[e2];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    auto side = [&](const Vec2& p) {
      return ex * (p.y - a.y) - ey * (p.x - a.x);  // >= 0: left of edge
    };
    Polygon input;
    input.swap(output);
    const std::size_t n = input.size();
    for (std::size_t v2 = 0, v1 = n - 1; v2 < n; v1 = v2++) {
      const Vec2& p = input[v1];
      const Vec2& q = input[v2];
      const double sp = side(p);
      const double sq = side(q);
      const bool p_in = sp >= 0.0;
      const bool q_in = sq >= 0.0;
      if (p_in != q_in) {
        const double t = sp / (sp - sq);
        output.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
      if (q_in) output.push_back(q);
    }
  }
  return output;
}

double footprint_intersection_area(const OrientedBox& a, const OrientedBox& b) {
  const Polygon inter = clip_convex(footprint_polygon(a), footprint_polygon(b));
  const double area = shoelace_area(inter);
  return area < kAreaEpsilon ? 0.0 : area;
}

}  // namespace

double normalize_angle(double radians) {
  double wrapped = std::remainder(radians, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

double angular_difference(double a, double b) {
  return std::abs(normalize_angle(a - b));
}

double deg_from_rad(double radians) { return radians * 180.0 / kPi; }

double rad_from_deg(double degrees) { return degrees * kPi / 180.0; }

Point point2(double x, double y) { return Point{x, y, 0.0, 2}; }

Point point3(double x, double y, double z) { return Point{x, y, z, 3}; }

double distance(const Point& a, const Point& b) {
  check_same_dim(a.dim, b.dim, "distance");
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Point rotated_z(const Point& p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return Point{c * p.x - s * p.y, s * p.x + c * p.y, p.z, p.dim};
}

Point translated(const Point& p, const Point& offset) {
  check_same_dim(p.dim, offset.dim, "translated");
  return Point{p.x + offset.x, p.y + offset.y, p.z + offset.z, p.dim};
}

double OrientedBox::volume() const {
  if (dim() != 3) throw std::logic_error("volume: box is not 3D");
  return length * width * height;
}

namespace {

void check_extent(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("box extent '") + name +
                                "' must be positive, got " +
                                std::to_string(value));
  }
}

}  // namespace

OrientedBox make_box2(double cx, double cy, double length, double width,
                      double yaw) {
  check_extent(length, "length");
  check_extent(width, "width");
  return OrientedBox{point2(cx, cy), length, width, 0.0, normalize_angle(yaw)};
}

OrientedBox make_box3(double cx, double cy, double cz, double length,
                      double width, double height, double yaw) {
  check_extent(length, "length");
  check_extent(width, "width");
  check_extent(height, "height");
  return OrientedBox{point3(cx, cy, cz), length, width, height,
                     normalize_angle(yaw)};
}

std::vector<Point> corners(const OrientedBox& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  const double lx[4] = {hl, -hl, -hl, hl};
  const double ly[4] = {hw, hw, -hw, -hw};

  std::vector<Point> pts;
  if (box.dim() == 2) {
    pts.reserve(4);
    for (int i = 0; i < 4; ++i) {
      pts.push_back(point2(box.center.x + c * lx[i] - s * ly[i],
                           box.center.y + s * lx[i] + c * ly[i]));
    }
  } else {
    pts.reserve(8);
    const double hh = 0.5 * box.height;
    for (double zsign : {-1.0, 1.0}) {
      for (int i = 0; i < 4; ++i) {
        pts.push_back(point3(box.center.x + c * lx[i] - s * ly[i],
                             box.center.y + s * lx[i] + c * ly[i],
                             box.center.z + zsign * hh));
      }
    }
  }
  return pts;
}

bool contains(const OrientedBox& box, const Point& p, double tolerance) {
  check_same_dim(p.dim, box.dim(), "contains");
  const double dx = p.x - box.center.x;
  const double dy = p.y - box.center.y;
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double local_x = c * dx + s * dy;
  const double local_y = -s * dx + c * dy;
  if (std::abs(local_x) > 0.5 * box.length + tolerance) return false;
  if (std::abs(local_y) > 0.5 * box.width + tolerance) return false;
  if (box.dim() == 3) {
    const double local_z = p.z - box.center.z;
    if (std::abs(local_z) > 0.5 * box.height + tolerance) return false;
  }
  return true;
}

double point_to_box_distance(const Point& p, const OrientedBox& box) {
  check_same_dim(p.dim, box.dim(), "point_to_box_distance");
  const double dx = p.x - box.center.x;
  const double dy = p.y - box.center.y;
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double local_x = c * dx + s * dy;
  const double local_y = -s * dx + c * dy;
  // Residuals within the containment tolerance collapse to 0 so that a
  // zero distance and a passing containment test coincide exactly (the
  // box's own corners land back on the box despite rotation round-off).
  auto residual = [](double coordinate, double half_extent) {
    const double r = std::abs(coordinate) - half_extent;
    return r <= kOnBoxTolerance ? 0.0 : r;
  };
  const double rx = residual(local_x, 0.5 * box.length);
  const double ry = residual(local_y, 0.5 * box.width);
  double rz = 0.0;
  if (box.dim() == 3) {
    rz = residual(p.z - box.center.z, 0.5 * box.height);
  }
  return std::sqrt(rx * rx + ry * ry + rz * rz);
}

double iou(const OrientedBox& a, const OrientedBox& b) {
  check_same_dim(a.dim(), b.dim(), "iou");
  if (a.dim() == 2) {
    const double inter = footprint_intersection_area(a, b);
    if (inter == 0.0) return 0.0;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return std::clamp(inter / uni, 0.0, 1.0);
  }
  const double z_lo = std::max(a.center.z - 0.5 * a.height,
                               b.center.z - 0.5 * b.height);
  const double z_hi = std::min(a.center.z + 0.5 * a.height,
                               b.center.z + 0.5 * b.height);
  if (z_hi <= z_lo) return 0.0;
  const double inter_area = footprint_intersection_area(a, b);
  if (inter_area == 0.0) return 0.0;
  const double inter_vol = inter_area * (z_hi - z_lo);
  const double uni = a.volume() + b.volume() - inter_vol;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter_vol / uni, 0.0, 1.0);
}

double cpd(const OrientedBox& a, const OrientedBox& b) {
  return distance(a.center, b.center);
}

OrientedBox bev_footprint(const OrientedBox& box) {
  if (box.dim() == 2) return box;
  return OrientedBox{point2(box.center.x, box.center.y), box.length, box.width,
                     0.0, box.yaw};
}

EgoPose bev_footprint(const EgoPose& ego) {
  if (ego.position.dim == 2) return ego;
  return EgoPose{point2(ego.position.x, ego.position.y), ego.yaw};
}

Point transformed(const Point& p, double angle, const Point& translation) {
  return translated(rotated_z(p, angle), translation);
}

OrientedBox transformed(const OrientedBox& box, double angle,
                        const Point& translation) {
  OrientedBox out = box;
  out.center = transformed(box.center, angle, translation);
  out.yaw = normalize_angle(box.yaw + angle);
  return out;
}

EgoPose transformed(const EgoPose& ego, double angle,
                    const Point& translation) {
  return EgoPose{transformed(ego.position, angle, translation),
                 normalize_angle(ego.yaw + angle)};
}

}  // namespace cetrack
