// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace terravor {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

}  // namespace

Expansion::Expansion(double v) {
  if (v != 0.0) terms_.push_back(v);
}

void Expansion::grow(double b) {
  std::vector<double> out;
  out.reserve(terms_.size() + 1);
  double q = b;
  for (double e : terms_) {
    double sum = 0.0, err = 0.0;
    two_sum(q, e, sum, err);
    if (err != 0.0) out.push_back(err);
    q = sum;
  }
  if (q != 0.0) out.push_back(q);
  terms_ = std::move(out);
}

Expansion Expansion::difference(double a, double b) {
  Expansion r;
  double x = 0.0, y = 0.0;
  two_sum(a, -b, x, y);
  if (y != 0.0) r.terms_.push_back(y);
  if (x != 0.0) r.terms_.push_back(x);
  return r;
}

Expansion Expansion::product(double a, double b) {
  Expansion r;
  double x = 0.0, y = 0.0;
  two_product(a, b, x, y);
  if (y != 0.0) r.terms_.push_back(y);
  if (x != 0.0) r.terms_.push_back(x);
  return r;
}

Expansion Expansion::operator+(const Expansion& o) const {
  Expansion r = *this;
  for (double t : o.terms_) r.grow(t);
  return r;
}

Expansion Expansion::operator-() const {
  Expansion r = *this;
  for (double& t : r.terms_) t = -t;
  return r;
}

Expansion Expansion::operator-(const Expansion& o) const { return *this + (-o); }

Expansion Expansion::operator*(const Expansion& o) const {
  Expansion r;
  for (double a : terms_) {
    for (double b : o.terms_) {
      double x = 0.0, y = 0.0;
      two_product(a, b, x, y);
      if (y != 0.0) r.grow(y);
      r.grow(x);
    }
  }
  return r;
}

double Expansion::estimate() const {
  double s = 0.0;
  for (double t : terms_) s += t;
  return s;
}

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;

  const Expansion acx = Expansion::difference(a.x, c.x);
  const Expansion bcy = Expansion::difference(b.y, c.y);
  const Expansion acy = Expansion::difference(a.y, c.y);
  const Expansion bcx = Expansion::difference(b.x, c.x);
  return (acx * bcy - acy * bcx).sign();
}

int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;

  const Expansion ax = Expansion::difference(a.x, d.x), ay = Expansion::difference(a.y, d.y);
  const Expansion bx = Expansion::difference(b.x, d.x), by = Expansion::difference(b.y, d.y);
  const Expansion cx = Expansion::difference(c.x, d.x), cy = Expansion::difference(c.y, d.y);
  const Expansion al = ax * ax + ay * ay;
  const Expansion bl = bx * bx + by * by;
  const Expansion cl = cx * cx + cy * cy;
  const Expansion exact = al * (bx * cy - cx * by) + bl * (cx * ay - ax * cy) + cl * (ax * by - bx * ay);
  return exact.sign();
}

bool in_closed_triangle(Point2 a, Point2 b, Point2 c, Point2 p) {
  const int o = orient2d(a, b, c);
  const int s1 = orient2d(a, b, p) * o;
  const int s2 = orient2d(b, c, p) * o;
  const int s3 = orient2d(c, a, p) * o;
  return s1 >= 0 && s2 >= 0 && s3 >= 0;
}

namespace {

bool on_segment_bbox(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Segment2& s, const Segment2& t) {
  const int o1 = orient2d(s.a, s.b, t.a);
  const int o2 = orient2d(s.a, s.b, t.b);
  const int o3 = orient2d(t.a, t.b, s.a);
  const int o4 = orient2d(t.a, t.b, s.b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment_bbox(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment_bbox(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment_bbox(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment_bbox(t.a, t.b, s.b)) return true;
  return false;
}

}  // namespace terravor
