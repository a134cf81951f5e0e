// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "terravor/constructions.hpp"
#include "terravor/geodesic.hpp"
#include "terravor/random.hpp"

namespace terravor {

std::vector<Point2> sample_domain_uniform(int m, Rng& rng);
std::vector<Point2> sample_domain_uniform(int m, std::uint64_t seed);

/// Projections of points drawn uniformly from the lifted surface: a triangle
/// with probability proportional to its lifted area, then a uniform point in it.
std::vector<Point2> sample_surface_uniform(const Terrain& terrain, int m, Rng& rng);
std::vector<Point2> sample_surface_uniform(const Terrain& terrain, int m, std::uint64_t seed);

struct GridCellStats {
  int cell_x = 0;
  int cell_y = 0;
  int contributor_count = 0;
};

/// Distinct labels per cell of the ceil(sqrt(m)) grid. Throws
/// Error{GridTooCoarse} if some cell holds no graph node.
std::vector<GridCellStats> grid_contributors(const DistanceField& field, const GeodesicGraph& graph, int m);

/// (3 pi / 2) sum_{i >= 3} 4^{i-1} e^{-4^{i-3}}, summed until terms vanish.
double annulus_series();

enum class ExperimentKind { PlanarGrid, Farming, Industrial, Realistic };

std::string to_string(ExperimentKind kind);
/// Accepts the scene kind names plus "realistic".
ExperimentKind parse_experiment_kind(const std::string& text);

struct ScalingRow {
  ExperimentKind kind = ExperimentKind::Industrial;
  int n = 0;
  int m = 0;
  int trials = 0;
  double mean_complexity = 0.0;
  double std_err = 0.0;
  std::uint64_t seed = 0;
};

/// Ordinary least squares fit of log(mean_complexity) against log(m).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Standard error of the slope; 0 with fewer than three points.
  double std_err = 0.0;
  int points = 0;
  /// False below the recommended four ladder points.
  bool enough_points = false;
};

/// Throws Error{InvalidInput} with fewer than two rows or a non-positive mean.
SlopeFit fit_loglog(std::span<const ScalingRow> rows);

struct ScalingConfig {
  ExperimentKind kind = ExperimentKind::Industrial;
  std::vector<std::pair<int, int>> sizes;  // (n, m)
  int trials = 1;
  std::uint64_t seed = 0;
  SceneOptions scene;
  /// Realistic scenes only.
  int refinement = 3;
  double max_slope = 2.0;
  bool surface_sampling = false;
  unsigned jobs = 0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  SlopeFit fit;
  /// Voronoi runs whose vertex count broke the 2m - 2 bound.
  std::int64_t euler_violations = 0;
  std::int64_t euler_checks = 0;
  /// Construction sample points outside every farm.
  std::int64_t discarded = 0;
  /// Measured slope per realistic row, max over trials.
  std::vector<double> max_measured_slope;
};

ScalingResult scaling_experiment(const ScalingConfig& config);

struct GridConfig {
  int m = 1024;
  int trials = 1;
  std::uint64_t seed = 0;
  int mesh_cells = 64;
  int refinement = 3;
  unsigned jobs = 0;
};

struct GridTrial {
  std::vector<GridCellStats> cells;
  std::int64_t voronoi_vertices = 0;
  bool euler_holds = true;
};

struct GridResult {
  std::vector<GridTrial> trials;
  double mean_contributors = 0.0;
  int max_contributors = 0;
  std::int64_t euler_violations = 0;
  /// histogram[t] = number of cells with exactly t contributors.
  std::vector<std::int64_t> histogram;
};

/// Uniform sites on a flat grid terrain, one labelling per trial.
GridResult grid_experiment(const GridConfig& config);

struct SurvivalResult {
  std::int64_t occupied = 0;
  std::int64_t alive = 0;
  std::int64_t discarded = 0;
  double frequency = 0.0;
  /// Binomial standard deviation of `frequency`.
  double sigma = 0.0;
  double bound = 0.0;
};

/// Alive frequency of occupied industrial farms.
SurvivalResult survival_experiment(int n, int m, int trials, std::uint64_t seed, const SceneOptions& scene = {},
                                   unsigned jobs = 0);

/// Distance from farm 0's entrance to its nearest site, one per trial, with
/// sqrt(2/m) standing in for an empty farm.
std::vector<double> entrance_distance_samples(int n, int m, int trials, std::uint64_t seed,
                                              const SceneOptions& scene = {}, unsigned jobs = 0);

/// Largest gap between the empirical CDF of `samples` and `cdf` on [0, hi],
/// taken at both sides of every jump and at the interval ends.
template <class Cdf>
double sup_cdf_deviation(std::vector<double> samples, double hi, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double total = static_cast<double>(samples.size());
  double worst = std::abs(cdf(0.0) - 0.0);
  std::size_t below = 0;
  for (std::size_t i = 0; i < samples.size() && samples[i] <= hi; i = below) {
    const double x = samples[i];
    const double before = below / total;
    while (below < samples.size() && samples[below] == x) ++below;
    const double after = below / total;
    const double f = cdf(x);
    worst = std::max({worst, std::abs(f - before), std::abs(f - after)});
  }
  worst = std::max(worst, std::abs(cdf(hi) - below / total));
  return worst;
}

}  // namespace terravor
