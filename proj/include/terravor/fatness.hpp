// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "terravor/geometry.hpp"

namespace terravor {

/// Planar Voronoi cell of one site of a sample on the unit torus, expressed
/// around the site's copy in [0, 1]^2. The polygon is convex and
/// counter-clockwise and may leave the unit square.
struct TorusVoronoiCell {
  Point2 site;
  std::vector<Point2> polygon;
  int m = 0;
  /// Side of the block of translated copies used (3 or 5).
  int replication = 3;
};

/// Cell of sample[index]. Uses the 3 x 3 block of translates, or 5 x 5 when
/// m <= 4. Throws Error{CellTooLarge} if the block cannot be trusted
/// (3 x 3: diameter >= 1/2; 5 x 5: a vertex 1 or more from the site) and
/// Error{InvalidInput} for m < 2 or a duplicated site.
TorusVoronoiCell torus_cell(std::span<const Point2> sample, std::size_t index);

/// Shortest displacement from a to b on the unit torus.
Point2 torus_delta(Point2 a, Point2 b);
double torus_dist(Point2 a, Point2 b);

struct Circle {
  Point2 center;
  double radius = 0.0;
};

/// Exact minimum enclosing circle of a point set (incremental, with the
/// boundary-point recursion unrolled).
Circle smallest_enclosing_circle(std::span<const Point2> points);

/// Largest disk inside a convex counter-clockwise polygon, by bisection on
/// the radius until the bracket is narrower than `tolerance`.
Circle largest_inscribed_circle(std::span<const Point2> polygon, double tolerance = 1e-9);

double polygon_area(std::span<const Point2> polygon);
double polygon_diameter(std::span<const Point2> polygon);

struct FatnessRecord {
  double diameter = 0.0;
  double R = 0.0;
  double r = 0.0;
  double fatness = 0.0;
};

FatnessRecord polygon_fatness(std::span<const Point2> polygon);
FatnessRecord cell_fatness(const TorusVoronoiCell& cell);

/// Cell-diameter threshold 4 * 3^{-1/4} * sqrt(j / (m - 1)).
double tail_radius(int m, int j);
/// Failure probability bound 6 e^{1 - j}.
double tail_bound(int j);

struct TailCheck {
  int j = 0;
  double radius = 0.0;
  double bound = 0.0;
  double empirical = 0.0;
  /// Binomial standard deviation of `empirical`.
  double sigma = 0.0;
  int trials = 0;
};

/// Frequency with which the cell of the first site has diameter above R_j,
/// for every requested j over the same trials.
std::vector<TailCheck> diameter_tail_check(int m, int trials, std::span<const int> js, std::uint64_t seed,
                                           unsigned jobs = 0);
TailCheck diameter_tail_check(int m, int trials, int j, std::uint64_t seed, unsigned jobs = 0);

/// Band radius sqrt(1 / (i (m - 1) pi)).
double second_nn_radius(int m, int i);

struct BandFrequency {
  int i = 0;
  double lower = 0.0;  // r_{i+1}
  double upper = 0.0;  // r_i
  double bound = 0.0;  // 1 / i^2
  double empirical = 0.0;
  double sigma = 0.0;
};

/// Frequency of the first site's second-nearest-neighbour torus distance in
/// each band [r_{i+1}, r_i], i = i_lo .. i_hi.
std::vector<BandFrequency> second_nn_check(int m, int trials, std::uint64_t seed, int i_lo = 4, int i_hi = 10,
                                           unsigned jobs = 0);

struct WitnessCheck {
  /// Band i of the second-nearest-neighbour distance; 0 above r_1.
  int band = 0;
  double radius = 0.0;
  Point2 center;
  bool contained = false;
};

/// Places the disk of radius r_{i+1} / 4 at distance r_{i+1} / 4 from the
/// site, on the side away from its nearest neighbour, and tests that the
/// computed cell contains it.
WitnessCheck inscribed_witness_check(std::span<const Point2> sample, std::size_t index);

enum class MarkovDistribution { Constant, Uniform, Exponential };

struct MarkovCheck {
  double mu = 0.0;
  double lhs = 0.0;  // estimate of E[e^{-X}]
  double rhs = 0.0;  // e^{-2 mu} / 2
  bool holds = false;
};

/// X is mu, uniform on [0, 2 mu] or exponential with mean mu.
MarkovCheck markov_exp_check(MarkovDistribution distribution, double mu, int trials, std::uint64_t seed);

struct FatnessTrial {
  int trial = 0;
  int m = 0;
  FatnessRecord record;
};

/// Fatness of the first site's cell per trial; with `all_cells`, of every
/// cell (correlated within a trial).
std::vector<FatnessTrial> fatness_experiment(int m, int trials, std::uint64_t seed, bool all_cells = false,
                                             unsigned jobs = 0);

}  // namespace terravor
