// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "terravor/terrain.hpp"

namespace terravor {

class Rng;

/// Delaunay triangulation of points in the closed unit square. The four
/// corners must be among `points`; all points must be distinct. Incremental
/// insertion with Lawson flips on exact predicates.
std::vector<Triangle> delaunay_unit_square(std::span<const Point2> points);

/// `n` vertices: the four corners, b = min(floor(sqrt(n)) - 1, (n - 4) / 8)
/// evenly spaced points on each wall, and uniform interior points; Delaunay
/// triangulated, with i.i.d. uniform heights rescaled so that the maximum
/// triangle slope equals `max_slope` (flat when `max_slope` is 0). The wall
/// points keep boundary edges as short as interior ones.
Terrain random_delaunay_terrain(int n, double max_slope, Rng& rng);

/// Regular grid of `cells x cells` squares, each split along its SW-NE
/// diagonal, with all heights zero.
Terrain flat_grid_terrain(int cells);

}  // namespace terravor
