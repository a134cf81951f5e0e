// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace terravor {

/// Point of the planar domain (the unit square).
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Point on the lifted surface.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 xy() const { return {x, y}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

struct Segment2 {
  Point2 a;
  Point2 b;

  double length() const { return std::hypot(b.x - a.x, b.y - a.y); }
  Point2 midpoint() const { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

inline double euclid_dist(Point2 p, Point2 q) { return std::hypot(q.x - p.x, q.y - p.y); }

inline double dist3(const Point3& p, const Point3& q) {
  const double dx = q.x - p.x, dy = q.y - p.y, dz = q.z - p.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool in_unit_square(Point2 p) {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

/// Distance from `p` to the closed segment `s`.
inline double point_segment_dist(Point2 p, const Segment2& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return euclid_dist(p, s.a);
  double t = dot(p - s.a, d) / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return euclid_dist(p, s.a + t * d);
}

}  // namespace terravor
