// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "terravor/geometry.hpp"

namespace terravor {

using Index = std::int32_t;
using Triangle = std::array<Index, 3>;

/// Undirected triangulation edge with a < b. `right` is -1 on the domain
/// boundary.
struct Edge {
  Index a = 0;
  Index b = 0;
  Index left = -1;
  Index right = -1;
};

/// Triangulated height field over the unit square. Immutable once built;
/// concurrent reads are safe.
class Terrain {
 public:
  /// Total uncovered (or over-covered) area tolerated by validation.
  static constexpr double kCoverTolerance = 1e-9;

  /// Validates and builds a terrain. Triangles are reoriented counter-clockwise.
  /// Throws Error{DegenerateTriangle | NonManifoldEdge | DomainNotCovered |
  /// InvalidInput | OutsideDomain}.
  static Terrain build(std::vector<Point2> vertices, std::vector<double> heights,
                       std::vector<Triangle> triangles);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Point2> vertices() const { return vertices_; }
  std::span<const double> heights() const { return heights_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  /// Sorted lexicographically by (a, b).
  std::span<const Edge> edges() const { return edges_; }

  Point2 vertex(Index v) const { return vertices_[v]; }
  Point3 lifted_vertex(Index v) const { return {vertices_[v].x, vertices_[v].y, heights_[v]}; }

  /// Edge indices of triangle `t`, ordered opposite to its vertices 0, 1, 2.
  const std::array<Index, 3>& triangle_edges(Index t) const { return triangle_edges_[t]; }
  /// Edge index of {a, b}, if it exists.
  std::optional<Index> find_edge(Index a, Index b) const;

  /// Lowest-index triangle whose closed projection contains `p`.
  std::optional<Index> locate(Point2 p) const;
  bool triangle_contains(Index t, Point2 p) const;

  /// Barycentric interpolation of the containing triangle's heights.
  /// Throws Error{OutsideDomain}.
  Point3 lift(Point2 p) const;
  /// Height of `p` using triangle `t`, which must contain it.
  double height_in(Index t, Point2 p) const;

  /// Norm of the gradient of the triangle's affine height map.
  double triangle_slope(Index t) const;
  double projected_area(Index t) const;
  double lifted_area(Index t) const;

 private:
  Terrain() = default;
  void build_locator();

  std::vector<Point2> vertices_;
  std::vector<double> heights_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 3>> triangle_edges_;
  std::vector<std::vector<Index>> vertex_edges_;

  int grid_ = 1;
  std::vector<std::uint32_t> cell_start_;
  std::vector<Index> cell_triangles_;
};

}  // namespace terravor
