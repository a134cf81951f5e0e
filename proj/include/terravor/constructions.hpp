// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "terravor/geometry.hpp"
#include "terravor/terrain.hpp"

namespace terravor {

// Coordinates are north-positive: the north wall is y = 1 and the west wall is
// x = 0.

enum class SceneKind { PlanarGrid, Farming, Industrial };

std::string to_string(SceneKind kind);
/// Accepts "planar", "planar_grid", "farming" and "industrial".
SceneKind parse_scene_kind(const std::string& text);

/// Straight road legs of an industrial farm, south / west / south / east.
struct RoadGeometry {
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  double alpha_c = 0.0;
  double alpha_d = 0.0;
  Point2 exit;
  double length = 0.0;
};

struct Farm {
  Point2 origin;  // north-west corner
  double side = 0.0;
  Point2 entrance;  // south-east corner
  Point2 exit;
  double road_length = 0.0;
  int row = 0;
  int column = 0;
  /// Road polyline from the entrance to the exit.
  std::vector<Point2> road;

  bool contains(Point2 p) const {
    return p.x >= origin.x && p.x <= origin.x + side && p.y <= origin.y && p.y >= origin.y - side;
  }
};

/// The folded strip near the east wall. Its geodesic width 1/(c 2^n) is kept
/// symbolically and counts as zero in every distance.
struct RidgeBlock {
  double x_position = 0.0;
  int rectangle_count = 0;
  double c = 2.0;
  int n = 0;
  int crossing_cost = 0;

  double geodesic_width() const;
};

struct ConstructionScene {
  SceneKind kind = SceneKind::Industrial;
  int m = 0;
  int n = 0;
  double c = 2.0;
  double w = 0.8;
  std::vector<Farm> farms;
  RidgeBlock ridge;
  /// Farms per row (industrial M, farming 1).
  int columns = 0;
  int rows = 0;
};

struct SceneOptions {
  double c = 2.0;
  double w = 0.8;
  /// Largest admitted expected number of sample points on the ridge block,
  /// m / (c 2^n). This is how the standing assumption m = O(n) is enforced.
  double max_ridge_hits = 1e-3;
};

/// Example overlay: m sites stacked near the west wall and n vertical lines
/// near the east wall. Each of the m - 1 horizontal bisectors crosses every
/// line once.
struct PlanarGridScene {
  int n = 0;
  int m = 0;
  std::vector<Point2> sites;
  std::vector<double> line_x;
  std::int64_t overlay_crossings = 0;

  /// Bisector between sites i - 1 and i, for i = 1 .. m - 1.
  std::vector<Segment2> bisectors() const;
  std::vector<Segment2> lines() const;
};

PlanarGridScene gen_planar_grid(int n, int m);

/// Flat terrain on which the scene's sites are vertices and each line is a
/// chain of triangulation edges; `map_edges` lists those chains.
struct MeshedPlanarGrid {
  Terrain terrain;
  std::vector<Index> map_edges;
};

MeshedPlanarGrid mesh_planar_grid(const PlanarGridScene& scene);

/// Throws Error{TooManySitesForRidgeWidth | InvalidInput}.
ConstructionScene gen_farming(int n, int m, const SceneOptions& options = {});
/// Throws Error{TooManySitesForRidgeWidth | InvalidInput | NegativeSegment}.
ConstructionScene gen_industrial(int n, int m, const SceneOptions& options = {});

/// Road of the i-th farm of a row whose farms' south edge is at `row_south`.
/// Throws Error{NegativeSegment | InvalidInput}.
RoadGeometry road_geometry(int i, int m, double w, double row_south = 0.0);

/// Index of the farm containing `p`, or -1.
int farm_of(const ConstructionScene& scene, Point2 p);

/// Analytic distance from `p` to the exit of farm `target`: in-farm straight
/// distance to p's entrance, p's road, and the ridge walk between exits.
/// Throws Error{OffPlateau}.
double construction_geodesic(const ConstructionScene& scene, Point2 p, int target);

struct DominationRecord {
  int farm = 0;
  Point2 dominating_point;
  /// Distance from the dominating point to its own exit.
  double r = 0.0;
  /// In-farm part of `r`: straight distance to the entrance.
  double entrance_distance = 0.0;
  bool alive = false;
};

struct EliminationResult {
  std::vector<DominationRecord> records;  // occupied farms, by farm index
  std::int64_t discarded = 0;             // sample points outside every farm
};

EliminationResult simulate_elimination(const ConstructionScene& scene, std::span<const Point2> sample);

/// Each alive cell crosses the 2n ridge rectangles and adds one cell.
std::int64_t estimated_complexity(std::span<const DominationRecord> records, int n);

/// Closed forms used by the construction analysis.
namespace kernels {
/// Probability that the nearest site in a farm lies within s of its entrance,
/// as the union bound m s^2 pi / 4.
double entrance_cdf_bound(int m, double s);
/// Exact law of the same event for s <= 1/sqrt(m): 1 - (1 - pi s^2 / 4)^m.
double entrance_cdf_exact(int m, double s);
/// Lower bound on the probability that none of X points of a farm i farms
/// away eliminates a point at distance r.
double no_elimination_bound(int m, double r, int i, int x);
/// Conditional survival bound given the neighbour counts X_i and Y_i.
double alive_given_counts(int m, double r, std::span<const int> x, std::span<const int> y);
/// Unconditional survival bound 1/2 exp(-2 r^3 m^2).
double alive_bound(int m, double r);
/// e^{-2 mu} / 2, the Markov lower bound on E[e^{-X}].
double markov_exp_bound(double mu);
/// Per-farm survival lower bound pi / (8 e^2 m^{1/3}).
double survival_bound(int m);
}  // namespace kernels

}  // namespace terravor
