// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "terravor/geodesic.hpp"
#include "terravor/terrain.hpp"

namespace terravor {

/// Measured realism parameters of a terrain. `beta` is always sqrt(1 + xi^2)
/// evaluated from the stored `xi`.
struct RealismParams {
  double lambda_est = 0.0;
  double xi = 0.0;
  double beta = 1.0;
};

double beta_from_slope(double xi);

/// Maximum triangle slope and the derived beta; lambda_est is left at 0.
RealismParams slope_bound(const Terrain& terrain);

/// Probe balls for the low-density estimator. Centres are all edge endpoints
/// and midpoints plus a `grid x grid` lattice of cell centres; radii run over
/// 2^-k for k = 0 .. min(max_level, ceil(log2(1 / shortest edge))).
struct ProbeConfig {
  int grid = 16;
  int max_level = 30;
};

/// Lower-bound estimate of the low-density parameter: the largest number of
/// edges longer than r that meet a probe ball of radius r.
/// Throws Error{EmptyEdgeSet}.
int low_density_estimate(std::span<const Segment2> edges, const ProbeConfig& probes = {});

std::vector<Segment2> terrain_segments(const Terrain& terrain);

/// Outcome of one distance-sandwich check. `lower_ratio` is geodesic/euclid
/// (must be >= 1) and `upper_ratio` is geodesic / ((1 + eps) beta euclid)
/// (must be <= 1).
struct SandwichWitness {
  double euclid = 0.0;
  double geodesic = 0.0;
  double lower_ratio = 1.0;
  double upper_ratio = 1.0;
  bool holds = true;
};

/// Relative round-off admitted when comparing two differently evaluated
/// lengths of the same path.
inline constexpr double kRoundoff = 1e-12;

SandwichWitness check_distance_sandwich(const GeodesicGraph& graph, Point2 p, Point2 q, double beta,
                                        double eps);

struct DiskAreaCheck {
  double area = 0.0;
  double lower_bound = 0.0;  // pi (r / beta)^2
  double upper_bound = 0.0;  // pi beta r^2
  bool lower_ok = false;
  bool upper_ok = false;
};

/// Lifted area of the geodesic disk of radius r about `center`, summed over
/// sub-triangles of side about r / samples_per_radius whose centroid is within
/// geodesic distance r. Bounds are tested with relative `slack`.
/// Throws Error{DiskClipped} unless the planar disk lies inside the domain.
DiskAreaCheck geodesic_disk_area(const GeodesicGraph& graph, Point2 center, double r, double slack = 0.02,
                                 int samples_per_radius = 40);

}  // namespace terravor
