// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "terravor/geodesic.hpp"

namespace terravor {

/// Complexity estimate of a discrete geodesic Voronoi diagram. Breakpoints are
/// not detected; `breakpoint_bound` carries the cap of one per terrain vertex.
struct VoronoiComplexityReport {
  std::int64_t voronoi_vertex_count = 0;
  std::int64_t chord_edge_crossings = 0;
  std::int64_t breakpoint_bound = 0;
  /// Distinct labels per cell of a ceil(sqrt(m)) grid, keyed by cy * g + cx.
  std::map<int, int> per_cell_contributors;
  int m = 0;
  int n = 0;

  std::int64_t total() const { return voronoi_vertex_count + chord_edge_crossings + breakpoint_bound; }
};

DistanceField voronoi_labeling(const GeodesicGraph& graph, std::span<const Point2> sites);

/// Triple points: lattice sub-triangles with three distinct corner labels,
/// merged when they touch and carry the same label triple.
std::int64_t count_voronoi_vertices(const DistanceField& field, const GeodesicGraph& graph);

/// Label changes along the Steiner nodes of every terrain edge.
std::int64_t count_chord_edge_crossings(const DistanceField& field, const GeodesicGraph& graph);
/// Same, restricted to the listed terrain edge indices.
std::int64_t count_chord_edge_crossings(const DistanceField& field, const GeodesicGraph& graph,
                                        std::span<const Index> edges);

/// Distinct labels among graph nodes in each cell of a g x g grid over the
/// unit square, row-major from the south-west cell. Empty cells count 0.
std::vector<int> labels_per_cell(const DistanceField& field, const GeodesicGraph& graph, int g);

int contributor_grid_size(int m);

VoronoiComplexityReport complexity_report(const DistanceField& field, const GeodesicGraph& graph);

struct EulerAudit {
  int m = 0;
  std::int64_t vertex_count = 0;
  /// 2m - 2, or -1 when m < 3 and the bound is vacuous.
  std::int64_t bound = -1;
  bool holds = true;
  int max_cell_contributors = 0;
  double mean_cell_contributors = 0.0;
};

EulerAudit euler_audit(const DistanceField& field, const GeodesicGraph& graph);

/// Components of each label class under lattice sub-triangle adjacency.
struct ConnectivityAudit {
  /// Sum over labels of (components - 1).
  int extra_components = 0;
  int disconnected_labels = 0;
  /// Sites that label no node at all.
  int empty_labels = 0;
};

ConnectivityAudit cell_connectivity_audit(const DistanceField& field, const GeodesicGraph& graph);

/// Projected label-boundary polyline pieces, one or three per lattice
/// sub-triangle with mixed labels, joining edge midpoints (and the centroid
/// at triple points).
std::vector<Segment2> label_boundary(const DistanceField& field, const GeodesicGraph& graph);

/// Projected cells coloured by label with the triangulation drawn on top.
void write_svg(std::ostream& out, const DistanceField& field, const GeodesicGraph& graph, int size_px = 800);

}  // namespace terravor
