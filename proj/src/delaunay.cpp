// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "terravor/error.hpp"
#include "terravor/predicates.hpp"
#include "terravor/random.hpp"

namespace terravor {
namespace {

struct Tri {
  std::array<Index, 3> v;
  std::array<Index, 3> nb;  // nb[i] lies across the edge opposite v[i]
};

class Builder {
 public:
  explicit Builder(std::span<const Point2> pts) : pts_(pts) {}

  void init(Index c00, Index c10, Index c11, Index c01) {
    tris_.push_back({{c00, c10, c11}, {-1, 1, -1}});
    tris_.push_back({{c00, c11, c01}, {-1, -1, 0}});
  }

  void insert(Index p) {
    const Point2 q = pts_[p];
    Index t = locate(q);
    std::array<int, 3> o{};
    for (int i = 0; i < 3; ++i) o[i] = edge_orient(t, i, q);
    const int zeros = (o[0] == 0) + (o[1] == 0) + (o[2] == 0);
    if (zeros >= 2) throw Error(ErrorCode::InvalidInput, "duplicate point " + std::to_string(p));
    if (zeros == 1) {
      split_edge(t, o[0] == 0 ? 0 : (o[1] == 0 ? 1 : 2), p);
    } else {
      split_triangle(t, p);
    }
    last_ = t;
  }

  std::vector<Triangle> triangles() const {
    std::vector<Triangle> out;
    out.reserve(tris_.size());
    for (const Tri& t : tris_) out.push_back({t.v[0], t.v[1], t.v[2]});
    return out;
  }

 private:
  int edge_orient(Index t, int i, Point2 q) const {
    const Tri& tr = tris_[t];
    return orient2d(pts_[tr.v[(i + 1) % 3]], pts_[tr.v[(i + 2) % 3]], q);
  }

  Index locate(Point2 q) {
    Index t = last_;
    for (std::size_t steps = 0; steps < 4 * tris_.size() + 16; ++steps) {
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int i = (k + rotate_++) % 3;
        if (edge_orient(t, i, q) < 0) {
          t = tris_[t].nb[i];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // Fall back to a scan; the walk should not fail on a Delaunay mesh.
    for (Index s = 0; s < static_cast<Index>(tris_.size()); ++s) {
      if (edge_orient(s, 0, q) >= 0 && edge_orient(s, 1, q) >= 0 && edge_orient(s, 2, q) >= 0) return s;
    }
    throw Error(ErrorCode::OutsideDomain, "point outside the triangulated square");
  }

  void relink(Index x, Index from, Index to) {
    if (x < 0) return;
    for (Index& n : tris_[x].nb) {
      if (n == from) {
        n = to;
        return;
      }
    }
  }

  int position(Index t, Index v) const {
    for (int i = 0; i < 3; ++i) {
      if (tris_[t].v[i] == v) return i;
    }
    return -1;
  }

  void split_triangle(Index t, Index p) {
    const auto [a, b, c] = tris_[t].v;
    const auto [na, nb, nc] = tris_[t].nb;
    const Index t1 = static_cast<Index>(tris_.size());
    const Index t2 = t1 + 1;
    tris_[t] = {{p, b, c}, {na, t1, t2}};
    tris_.push_back({{p, c, a}, {nb, t2, t}});
    tris_.push_back({{p, a, b}, {nc, t, t1}});
    relink(nb, t, t1);
    relink(nc, t, t2);
    legalize(p, {t, t1, t2});
  }

  void split_edge(Index t, int i, Index p) {
    const Index a = tris_[t].v[i], b = tris_[t].v[(i + 1) % 3], c = tris_[t].v[(i + 2) % 3];
    const Index u = tris_[t].nb[i];
    const Index t_nb_b = tris_[t].nb[(i + 1) % 3];  // across (c, a)
    const Index t_nb_c = tris_[t].nb[(i + 2) % 3];  // across (a, b)
    const Index t1 = static_cast<Index>(tris_.size());
    if (u < 0) {
      tris_[t] = {{a, b, p}, {-1, t1, t_nb_c}};
      tris_.push_back({{a, p, c}, {-1, t_nb_b, t}});
      relink(t_nb_b, t, t1);
      legalize(p, {t, t1});
      return;
    }
    const int j = (position(u, b) + 1) % 3;  // d follows b in u
    const Index d = tris_[u].v[j];
    const Index u_nb_b = tris_[u].nb[position(u, b)];  // across (d, c)
    const Index u_nb_c = tris_[u].nb[position(u, c)];  // across (b, d)
    const Index u1 = t1 + 1;
    tris_[t] = {{a, b, p}, {u1, t1, t_nb_c}};
    tris_.push_back({{a, p, c}, {u, t_nb_b, t}});
    tris_[u] = {{d, c, p}, {t1, u1, u_nb_b}};
    tris_.push_back({{d, p, b}, {t, u_nb_c, u}});
    relink(t_nb_b, t, t1);
    relink(u_nb_c, u, u1);
    legalize(p, {t, t1, u, u1});
  }

  void legalize(Index p, std::initializer_list<Index> start) {
    std::vector<std::pair<Index, Index>> stack;  // (triangle, inserted vertex)
    for (Index t : start) stack.push_back({t, p});
    while (!stack.empty()) {
      const auto [t, pv] = stack.back();
      stack.pop_back();
      const int i = position(t, pv);
      const Index o = tris_[t].nb[i];
      if (o < 0) continue;
      const Index b = tris_[t].v[(i + 1) % 3], c = tris_[t].v[(i + 2) % 3];
      const int jd = (position(o, b) + 1) % 3;
      const Index d = tris_[o].v[jd];
      if (incircle(pts_[pv], pts_[b], pts_[c], pts_[d]) <= 0) continue;
      const Index t_nb_b = tris_[t].nb[(i + 1) % 3];  // across (c, p)
      const Index t_nb_c = tris_[t].nb[(i + 2) % 3];  // across (p, b)
      const Index o_nb_c = tris_[o].nb[position(o, c)];  // across (b, d)
      const Index o_nb_b = tris_[o].nb[position(o, b)];  // across (d, c)
      tris_[t] = {{pv, b, d}, {o_nb_c, o, t_nb_c}};
      tris_[o] = {{pv, d, c}, {o_nb_b, t_nb_b, t}};
      relink(o_nb_c, o, t);
      relink(t_nb_b, t, o);
      stack.push_back({t, pv});
      stack.push_back({o, pv});
    }
  }

  std::span<const Point2> pts_;
  std::vector<Tri> tris_;
  Index last_ = 0;
  unsigned rotate_ = 0;
};

}  // namespace

std::vector<Triangle> delaunay_unit_square(std::span<const Point2> points) {
  std::array<Index, 4> corner{-1, -1, -1, -1};
  const std::array<Point2, 4> corners{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  for (Index i = 0; i < static_cast<Index>(points.size()); ++i) {
    if (!in_unit_square(points[i])) {
      throw Error(ErrorCode::OutsideDomain, "point " + std::to_string(i) + " outside the unit square");
    }
    for (int c = 0; c < 4; ++c) {
      if (points[i] == corners[c]) {
        if (corner[c] >= 0) throw Error(ErrorCode::InvalidInput, "duplicate corner point");
        corner[c] = i;
      }
    }
  }
  for (Index c : corner) {
    if (c < 0) throw Error(ErrorCode::InvalidInput, "the four unit-square corners are required");
  }

  // Insert in a serpentine bucket order so the walk stays short.
  std::vector<Index> order;
  for (Index i = 0; i < static_cast<Index>(points.size()); ++i) {
    if (std::find(corner.begin(), corner.end(), i) == corner.end()) order.push_back(i);
  }
  const int g = std::max(1, static_cast<int>(std::sqrt(order.size() / 4.0)));
  auto key = [&](Index i) {
    const int cy = std::min(g - 1, static_cast<int>(points[i].y * g));
    int cx = std::min(g - 1, static_cast<int>(points[i].x * g));
    if (cy % 2 == 1) cx = g - 1 - cx;
    return std::pair{cy, cx};
  };
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) { return key(l) < key(r); });

  Builder builder(points);
  builder.init(corner[0], corner[1], corner[2], corner[3]);
  for (Index i : order) builder.insert(i);
  return builder.triangles();
}

Terrain random_delaunay_terrain(int n, double max_slope, Rng& rng) {
  if (n < 4) throw Error(ErrorCode::InvalidInput, "a terrain needs at least the 4 corners");
  std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  pts.reserve(n);
  const int wall = std::max(0, std::min(static_cast<int>(std::sqrt(static_cast<double>(n))) - 1, (n - 4) / 8));
  for (int i = 1; i <= wall; ++i) {
    const double t = static_cast<double>(i) / (wall + 1);
    pts.insert(pts.end(), {{t, 0.0}, {1.0, t}, {1.0 - t, 1.0}, {0.0, 1.0 - t}});
  }
  while (static_cast<int>(pts.size()) < n) {
    const Point2 p = rng.unit_square();
    if (p.x > 0.0 && p.y > 0.0) pts.push_back(p);
  }
  std::vector<Triangle> tris = delaunay_unit_square(pts);
  std::vector<double> heights(pts.size());
  for (double& h : heights) h = rng.uniform();

  Terrain raw = Terrain::build(pts, heights, tris);
  double xi = 0.0;
  for (Index t = 0; t < static_cast<Index>(raw.triangle_count()); ++t) xi = std::max(xi, raw.triangle_slope(t));
  const double scale = (xi > 0.0 && max_slope > 0.0) ? max_slope / xi : 0.0;
  for (double& h : heights) h *= scale;
  return Terrain::build(std::move(pts), std::move(heights), std::vector<Triangle>(raw.triangles().begin(), raw.triangles().end()));
}

Terrain flat_grid_terrain(int cells) {
  if (cells < 1) throw Error(ErrorCode::InvalidInput, "grid needs at least one cell");
  std::vector<Point2> pts;
  const int s = cells + 1;
  pts.reserve(static_cast<std::size_t>(s) * s);
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) {
      pts.push_back({i == cells ? 1.0 : static_cast<double>(i) / cells, j == cells ? 1.0 : static_cast<double>(j) / cells});
    }
  }
  std::vector<Triangle> tris;
  tris.reserve(2 * static_cast<std::size_t>(cells) * cells);
  for (int j = 0; j < cells; ++j) {
    for (int i = 0; i < cells; ++i) {
      const Index a = j * s + i, b = a + 1, c = a + s + 1, d = a + s;
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  }
  std::vector<double> heights(pts.size(), 0.0);
  return Terrain::build(std::move(pts), std::move(heights), std::move(tris));
}

}  // namespace terravor
