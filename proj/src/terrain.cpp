// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "terravor/error.hpp"
#include "terravor/predicates.hpp"

namespace terravor {
namespace {

std::string describe(Index t, const Triangle& tri) {
  return "triangle " + std::to_string(t) + " (" + std::to_string(tri[0]) + ", " +
         std::to_string(tri[1]) + ", " + std::to_string(tri[2]) + ")";
}

bool on_same_wall(Point2 a, Point2 b) {
  return (a.x == 0.0 && b.x == 0.0) || (a.x == 1.0 && b.x == 1.0) || (a.y == 0.0 && b.y == 0.0) ||
         (a.y == 1.0 && b.y == 1.0);
}

struct HalfEdge {
  Index a, b;  // a < b
  Index tri;
  bool forward;  // triangle traverses a -> b
};

}  // namespace

Terrain Terrain::build(std::vector<Point2> vertices, std::vector<double> heights,
                       std::vector<Triangle> triangles) {
  if (heights.size() != vertices.size()) {
    throw Error(ErrorCode::InvalidInput, "heights (" + std::to_string(heights.size()) +
                                             ") not aligned with vertices (" +
                                             std::to_string(vertices.size()) + ")");
  }
  if (triangles.empty()) throw Error(ErrorCode::DomainNotCovered, "no triangles");
  const auto n = static_cast<Index>(vertices.size());
  for (Index v = 0; v < n; ++v) {
    if (!is_finite(vertices[v]) || !std::isfinite(heights[v])) {
      throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " is not finite");
    }
    if (!in_unit_square(vertices[v])) {
      throw Error(ErrorCode::OutsideDomain, "vertex " + std::to_string(v) + " lies outside the unit square");
    }
  }

  std::vector<HalfEdge> halves;
  halves.reserve(3 * triangles.size());
  double area = 0.0;
  for (Index t = 0; t < static_cast<Index>(triangles.size()); ++t) {
    Triangle& tri = triangles[t];
    for (Index v : tri) {
      if (v < 0 || v >= n) {
        throw Error(ErrorCode::InvalidInput, describe(t, tri) + " has an out-of-range index");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw Error(ErrorCode::DegenerateTriangle, describe(t, tri) + " repeats a vertex");
    }
    const int o = orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    if (o == 0) throw Error(ErrorCode::DegenerateTriangle, describe(t, tri) + " has zero area");
    if (o < 0) std::swap(tri[1], tri[2]);
    area += 0.5 * cross(vertices[tri[1]] - vertices[tri[0]], vertices[tri[2]] - vertices[tri[0]]);
    for (int i = 0; i < 3; ++i) {
      const Index u = tri[(i + 1) % 3], w = tri[(i + 2) % 3];
      halves.push_back({std::min(u, w), std::max(u, w), t, u < w});
    }
  }
  std::sort(halves.begin(), halves.end(), [](const HalfEdge& l, const HalfEdge& r) {
    return std::tie(l.a, l.b, l.tri) < std::tie(r.a, r.b, r.tri);
  });

  Terrain out;
  out.triangle_edges_.assign(triangles.size(), {-1, -1, -1});
  out.vertex_edges_.assign(vertices.size(), {});
  for (std::size_t i = 0; i < halves.size();) {
    std::size_t j = i;
    while (j < halves.size() && halves[j].a == halves[i].a && halves[j].b == halves[i].b) ++j;
    const HalfEdge& h = halves[i];
    const std::string name = "edge (" + std::to_string(h.a) + ", " + std::to_string(h.b) + ")";
    if (j - i > 2) {
      throw Error(ErrorCode::NonManifoldEdge, name + " borders " + std::to_string(j - i) + " triangles");
    }
    Edge e{h.a, h.b, h.tri, -1};
    if (j - i == 2) {
      if (halves[i].forward == halves[i + 1].forward) {
        throw Error(ErrorCode::NonManifoldEdge,
                    name + " has both incident triangles on the same side (overlap)");
      }
      e.right = halves[i + 1].tri;
    } else if (!on_same_wall(vertices[h.a], vertices[h.b])) {
      throw Error(ErrorCode::DomainNotCovered, name + " is a boundary edge inside the domain (hole)");
    }
    const auto ei = static_cast<Index>(out.edges_.size());
    out.edges_.push_back(e);
    out.vertex_edges_[h.a].push_back(ei);
    out.vertex_edges_[h.b].push_back(ei);
    for (std::size_t k = i; k < j; ++k) {
      const Triangle& tri = triangles[halves[k].tri];
      for (int c = 0; c < 3; ++c) {
        if (tri[c] != h.a && tri[c] != h.b) out.triangle_edges_[halves[k].tri][c] = ei;
      }
    }
    i = j;
  }
  if (std::abs(area - 1.0) > kCoverTolerance) {
    throw Error(ErrorCode::DomainNotCovered,
                "triangles cover area " + std::to_string(area) + " instead of 1");
  }

  out.vertices_ = std::move(vertices);
  out.heights_ = std::move(heights);
  out.triangles_ = std::move(triangles);
  out.build_locator();
  return out;
}

void Terrain::build_locator() {
  grid_ = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(triangles_.size()))), 1, 1024);
  const auto cell = [this](double v) {
    return std::clamp(static_cast<int>(std::floor(v * grid_)), 0, grid_ - 1);
  };
  std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(grid_) * grid_);
  for (Index t = 0; t < static_cast<Index>(triangles_.size()); ++t) {
    const Triangle& tri = triangles_[t];
    double x0 = 1.0, y0 = 1.0, x1 = 0.0, y1 = 0.0;
    for (Index v : tri) {
      x0 = std::min(x0, vertices_[v].x);
      y0 = std::min(y0, vertices_[v].y);
      x1 = std::max(x1, vertices_[v].x);
      y1 = std::max(y1, vertices_[v].y);
    }
    for (int cy = cell(y0); cy <= cell(y1); ++cy) {
      for (int cx = cell(x0); cx <= cell(x1); ++cx) buckets[cy * grid_ + cx].push_back(t);
    }
  }
  cell_start_.assign(buckets.size() + 1, 0);
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    cell_start_[c + 1] = cell_start_[c] + static_cast<std::uint32_t>(buckets[c].size());
  }
  cell_triangles_.clear();
  cell_triangles_.reserve(cell_start_.back());
  for (const auto& b : buckets) cell_triangles_.insert(cell_triangles_.end(), b.begin(), b.end());
}

std::optional<Index> Terrain::find_edge(Index a, Index b) const {
  if (a > b) std::swap(a, b);
  for (Index e : vertex_edges_[a]) {
    if (edges_[e].b == b) return e;
  }
  return std::nullopt;
}

bool Terrain::triangle_contains(Index t, Point2 p) const {
  const Triangle& tri = triangles_[t];
  const Point2 a = vertices_[tri[0]], b = vertices_[tri[1]], c = vertices_[tri[2]];
  return orient2d(a, b, p) >= 0 && orient2d(b, c, p) >= 0 && orient2d(c, a, p) >= 0;
}

std::optional<Index> Terrain::locate(Point2 p) const {
  if (!is_finite(p) || !in_unit_square(p)) return std::nullopt;
  const int cx = std::clamp(static_cast<int>(std::floor(p.x * grid_)), 0, grid_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(p.y * grid_)), 0, grid_ - 1);
  const std::size_t c = static_cast<std::size_t>(cy) * grid_ + cx;
  for (std::uint32_t i = cell_start_[c]; i < cell_start_[c + 1]; ++i) {
    if (triangle_contains(cell_triangles_[i], p)) return cell_triangles_[i];
  }
  return std::nullopt;
}

double Terrain::height_in(Index t, Point2 p) const {
  const Triangle& tri = triangles_[t];
  const Point2 a = vertices_[tri[0]], b = vertices_[tri[1]], c = vertices_[tri[2]];
  const double det = cross(b - a, c - a);
  const double wb = cross(p - a, c - a) / det;
  const double wc = cross(b - a, p - a) / det;
  const double wa = 1.0 - wb - wc;
  return wa * heights_[tri[0]] + wb * heights_[tri[1]] + wc * heights_[tri[2]];
}

Point3 Terrain::lift(Point2 p) const {
  const auto t = locate(p);
  if (!t) {
    throw Error(ErrorCode::OutsideDomain,
                "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside the domain");
  }
  return {p.x, p.y, height_in(*t, p)};
}

double Terrain::triangle_slope(Index t) const {
  const Triangle& tri = triangles_[t];
  const Point2 a = vertices_[tri[0]], b = vertices_[tri[1]], c = vertices_[tri[2]];
  const double za = heights_[tri[0]], zb = heights_[tri[1]], zc = heights_[tri[2]];
  const Point2 u = b - a, v = c - a;
  const double du = zb - za, dv = zc - za;
  const double det = cross(u, v);
  // Solve g . u = du, g . v = dv.
  const double gx = (du * v.y - dv * u.y) / det;
  const double gy = (dv * u.x - du * v.x) / det;
  return std::hypot(gx, gy);
}

double Terrain::projected_area(Index t) const {
  const Triangle& tri = triangles_[t];
  return 0.5 * cross(vertices_[tri[1]] - vertices_[tri[0]], vertices_[tri[2]] - vertices_[tri[0]]);
}

double Terrain::lifted_area(Index t) const {
  const Point3 a = lifted_vertex(triangles_[t][0]);
  const Point3 b = lifted_vertex(triangles_[t][1]);
  const Point3 c = lifted_vertex(triangles_[t][2]);
  const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
  const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
  const double nx = uy * vz - uz * vy, ny = uz * vx - ux * vz, nz = ux * vy - uy * vx;
  return 0.5 * std::sqrt(nx * nx + ny * ny + nz * nz);
}

}  // namespace terravor
