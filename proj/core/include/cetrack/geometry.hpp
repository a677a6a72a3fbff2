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

#ifndef CETRACK_GEOMETRY_HPP_
#define CETRACK_GEOMETRY_HPP_

#include <vector>

namespace cetrack {

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle in radians into (-pi, pi].
double normalize_angle(double radians);

/// Wrapped absolute difference of two angles, in [0, pi].
double angular_difference(double a, double b);

double deg_from_rad(double radians);
double rad_from_deg(double degrees);

/// A 2D or 3D point in meters. z is kept at 0 for 2D points.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  int dim = 3;  // 2 or 3
};

Point point2(double x, double y);
Point point3(double x, double y, double z);

/// Euclidean distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Point& a, const Point& b);

/// Rotation about the vertical axis through the origin.
Point rotated_z(const Point& p, double angle);
Point translated(const Point& p, const Point& offset);

/// Yaw-oriented bounding box. `length` runs along the box's local x axis,
/// `width` along local y, `height` along z (3D only). Yaw is the rotation
/// about the vertical axis, normalized to (-pi, pi].
///
/// Use make_box2 / make_box3 to construct: they validate extents and
/// normalize the yaw.
struct OrientedBox {
  Point center;
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;  // 0 in 2D
  double yaw = 0.0;

  int dim() const { return center.dim; }
  double area() const { return length * width; }
  double volume() const;  // 3D only; throws std::logic_error in 2D
};

OrientedBox make_box2(double cx, double cy, double length, double width,
                      double yaw);
OrientedBox make_box3(double cx, double cy, double cz, double length,
                      double width, double height, double yaw);

/// Ego vehicle pose in the same reference frame as the boxes.
struct EgoPose {
  Point position;
  double yaw = 0.0;
};

/// Box corners in a fixed order. 2D: counterclockwise starting at the
/// front-left corner (+length/2, +width/2) in the box frame. 3D: the four
/// bottom-face corners (z = -height/2) in the 2D order, then the top face
/// in the same order. The mean of the corners is the box center.
std::vector<Point> corners(const OrientedBox& box);

/// True if p lies inside or on the solid box region, within `tolerance`
/// meters per axis.
bool contains(const OrientedBox& box, const Point& p, double tolerance = 1e-9);

/// Euclidean distance from p to the closest point of the solid box region;
/// 0 if p is inside or on the box. Closed form: express p in the box frame,
/// clamp each coordinate to the half-extents, measure the residual.
/// Returns exactly 0 whenever contains(box, p) holds at its default
/// tolerance, so the two predicates never disagree.
double point_to_box_distance(const Point& p, const OrientedBox& box);

/// Intersection-over-union of two boxes of the same dimension. 2D boxes
/// intersect by convex polygon clipping; 3D adds the vertical overlap.
/// Intersections below 1e-12 m^2 count as empty.
double iou(const OrientedBox& a, const OrientedBox& b);

/// Center-point distance in meters.
double cpd(const OrientedBox& a, const OrientedBox& b);

/// Bird's-eye-view footprint of a 3D box (z and height dropped).
OrientedBox bev_footprint(const OrientedBox& box);
EgoPose bev_footprint(const EgoPose& ego);

/// Rigid transform: rotate by `angle` about the vertical axis through the
/// origin, then translate. Used to express frame changes; all metrics in
/// this library are invariant under it when applied jointly to every input.
Point transformed(const Point& p, double angle, const Point& translation);
OrientedBox transformed(const OrientedBox& box, double angle,
                        const Point& translation);
EgoPose transformed(const EgoPose& ego, double angle,
                    const Point& translation);

}  // namespace cetrack

#endif  // CETRACK_GEOMETRY_HPP_
