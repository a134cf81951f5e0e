// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "terravor/geometry.hpp"

namespace terravor {

/// Floating-point expansion: a sum of non-overlapping doubles in increasing
/// magnitude, as in Shewchuk's adaptive-precision arithmetic. Only the exact
/// fallback paths of the predicates use it.
class Expansion {
 public:
  Expansion() = default;
  explicit Expansion(double v);

  static Expansion difference(double a, double b);
  static Expansion product(double a, double b);

  Expansion operator+(const Expansion& o) const;
  Expansion operator-(const Expansion& o) const;
  Expansion operator*(const Expansion& o) const;
  Expansion operator-() const;

  /// -1, 0 or +1; exact.
  int sign() const { return terms_.empty() ? 0 : (terms_.back() > 0.0 ? 1 : -1); }
  double estimate() const;
  const std::vector<double>& terms() const { return terms_; }

 private:
  void grow(double b);
  std::vector<double> terms_;
};

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise,
/// 0 collinear. Exact for all finite double inputs.
int orient2d(Point2 a, Point2 b, Point2 c);

/// +1 if `d` lies strictly inside the circle through the counter-clockwise
/// triangle (a, b, c), -1 outside, 0 cocircular. Exact.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

/// Closed-triangle containment with exact orientation tests. The triangle may
/// be given in either orientation but must be non-degenerate.
bool in_closed_triangle(Point2 a, Point2 b, Point2 c, Point2 p);

/// Exact closed-segment intersection test (touching counts).
bool segments_intersect(const Segment2& s, const Segment2& t);

}  // namespace terravor
