// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "terravor/terrain.hpp"

namespace terravor {

/// Per-node nearest-site labels and distances produced by a multi-source
/// relaxation. `label[v]` is -1 only for nodes no site can reach.
struct DistanceField {
  std::vector<double> distance;
  std::vector<Index> label;
  std::vector<Point2> sites;
};

/// Steiner subdivision graph of a terrain.
///
/// Each triangle carries the barycentric lattice of resolution k + 1: its
/// three vertices, k evenly spaced points on every edge (shared with the
/// neighbouring triangle) and k(k-1)/2 interior points. Any two nodes of the
/// same triangle are joined by an arc whose weight is the 3D length of the
/// straight segment between them, which lies on that face. Arcs are not
/// stored; Dijkstra enumerates them from the per-triangle lattices.
///
/// The graph keeps a reference to the terrain, which must outlive it.
class GeodesicGraph {
 public:
  GeodesicGraph(const Terrain& terrain, int refinement_k);

  const Terrain& terrain() const { return *terrain_; }
  int refinement() const { return k_; }
  /// Lattice subdivisions per triangle edge (k + 1).
  int resolution() const { return k_ + 1; }

  std::size_t node_count() const { return nodes_.size(); }
  const Point3& node(Index v) const { return nodes_[v]; }
  std::span<const Point3> nodes() const { return nodes_; }

  /// Global node ids of triangle `t` in local lattice order; see local_index.
  std::span<const Index> lattice(Index t) const {
    return {tri_nodes_.data() + static_cast<std::size_t>(t) * lattice_size_, lattice_size_};
  }
  std::size_t lattice_size() const { return lattice_size_; }
  /// Local index of lattice point (i, j), i + j <= resolution(), where the
  /// point is A + i/s (B - A) + j/s (C - A) for the triangle's vertices A, B, C.
  int local_index(int i, int j) const;

  std::span<const Index> incident_triangles(Index v) const {
    return {node_tris_.data() + node_tri_start_[v], node_tri_start_[v + 1] - node_tri_start_[v]};
  }

  /// Nodes along terrain edge `e` from its lower to its higher vertex.
  std::vector<Index> edge_nodes(Index e) const;

  /// The s^2 sub-triangles of a lattice, as local index triples.
  const std::vector<std::array<int, 3>>& local_subtriangles() const { return sub_triangles_; }

  /// Unique arcs (a < b). Meant for inspection of small graphs.
  std::vector<std::pair<Index, Index>> arcs() const;
  bool connected() const;

 private:
  const Terrain* terrain_;
  int k_;
  std::size_t lattice_size_;
  std::vector<Point3> nodes_;
  std::vector<Index> tri_nodes_;
  std::vector<std::uint32_t> node_tri_start_;
  std::vector<Index> node_tris_;
  std::vector<std::array<int, 3>> sub_triangles_;
};

/// Shortest-path length between lifted `p` and `q` after joining each to every
/// lattice node of its containing triangle. Points sharing a closed triangle are
/// also joined directly. Throws Error{OutsideDomain}.
double geodesic_distance(const GeodesicGraph& graph, Point2 p, Point2 q);

/// Simultaneous relaxation from all lifted sites, ordered by (distance, node,
/// site). Exact ties resolve to the lowest site index.
/// Throws Error{NoSites | OutsideDomain}.
DistanceField multi_source_field(const GeodesicGraph& graph, std::span<const Point2> sites);

/// Graph distance from the field's nearest site to an arbitrary point `p`,
/// extending the field through the lattice of p's triangle. Sites sharing a
/// closed triangle with `p` contribute their straight-line distance; this scan
/// is linear in the number of sites.
double field_distance_at(const GeodesicGraph& graph, const DistanceField& field, Point2 p);

}  // namespace terravor
