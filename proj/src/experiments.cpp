// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/experiments.hpp"

#include <array>
#include <functional>
#include <numbers>
#include <numeric>

#include "terravor/delaunay.hpp"
#include "terravor/error.hpp"
#include "terravor/voronoi.hpp"

namespace terravor {
namespace {

std::uint64_t trial_stream(std::size_t row, std::size_t trial) {
  return (static_cast<std::uint64_t>(row) << 32) | static_cast<std::uint64_t>(trial);
}

struct MeanAndError {
  double mean = 0.0;
  double std_err = 0.0;
};

MeanAndError summarize(std::span<const double> values) {
  MeanAndError out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_err = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

ConstructionScene make_scene(ExperimentKind kind, int n, int m, const SceneOptions& options) {
  return kind == ExperimentKind::Farming ? gen_farming(n, m, options) : gen_industrial(n, m, options);
}

}  // namespace

std::vector<Point2> sample_domain_uniform(int m, Rng& rng) {
  if (m < 1) throw Error(ErrorCode::InvalidInput, "sample size must be positive");
  std::vector<Point2> out(static_cast<std::size_t>(m));
  for (Point2& p : out) p = rng.unit_square();
  return out;
}

std::vector<Point2> sample_domain_uniform(int m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_domain_uniform(m, rng);
}

std::vector<Point2> sample_surface_uniform(const Terrain& terrain, int m, Rng& rng) {
  if (m < 1) throw Error(ErrorCode::InvalidInput, "sample size must be positive");
  std::vector<double> cumulative(terrain.triangle_count());
  double total = 0.0;
  for (Index t = 0; t < static_cast<Index>(cumulative.size()); ++t) {
    total += terrain.lifted_area(t);
    cumulative[t] = total;
  }
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double pick = rng.uniform() * total;
    const auto t = static_cast<Index>(
        std::min<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(),
                              cumulative.size() - 1));
    double u = rng.uniform(), v = rng.uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const Triangle& tri = terrain.triangles()[t];
    const Point2 a = terrain.vertex(tri[0]);
    out.push_back(a + u * (terrain.vertex(tri[1]) - a) + v * (terrain.vertex(tri[2]) - a));
  }
  return out;
}

std::vector<Point2> sample_surface_uniform(const Terrain& terrain, int m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_surface_uniform(terrain, m, rng);
}

std::vector<GridCellStats> grid_contributors(const DistanceField& field, const GeodesicGraph& graph, int m) {
  const int g = contributor_grid_size(m);
  const std::vector<int> counts = labels_per_cell(field, graph, g);
  std::vector<GridCellStats> out;
  out.reserve(counts.size());
  for (int cy = 0; cy < g; ++cy) {
    for (int cx = 0; cx < g; ++cx) {
      const int c = counts[cy * g + cx];
      if (c == 0) {
        throw Error(ErrorCode::GridTooCoarse, "grid cell (" + std::to_string(cx) + ", " + std::to_string(cy) +
                                                  ") holds no graph node; refine the terrain");
      }
      out.push_back({cx, cy, c});
    }
  }
  return out;
}

double annulus_series() {
  double sum = 0.0;
  for (int i = 3;; ++i) {
    const double term = std::pow(4.0, i - 1) * std::exp(-std::pow(4.0, i - 3));
    sum += term;
    if (i > 4 && term < 1e-300) break;
  }
  return 1.5 * std::numbers::pi * sum;
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PlanarGrid:
      return "planar";
    case ExperimentKind::Farming:
      return "farming";
    case ExperimentKind::Industrial:
      return "industrial";
    case ExperimentKind::Realistic:
      return "realistic";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "realistic") return ExperimentKind::Realistic;
  switch (parse_scene_kind(text)) {
    case SceneKind::PlanarGrid:
      return ExperimentKind::PlanarGrid;
    case SceneKind::Farming:
      return ExperimentKind::Farming;
    case SceneKind::Industrial:
      break;
  }
  return ExperimentKind::Industrial;
}

SlopeFit fit_loglog(std::span<const ScalingRow> rows) {
  if (rows.size() < 2) throw Error(ErrorCode::InvalidInput, "a slope needs at least two ladder points");
  std::vector<double> x, y;
  for (const ScalingRow& r : rows) {
    if (!(r.mean_complexity > 0.0) || r.m < 1) {
      throw Error(ErrorCode::InvalidInput, "log-log fit needs positive means (m = " + std::to_string(r.m) + ")");
    }
    x.push_back(std::log(static_cast<double>(r.m)));
    y.push_back(std::log(r.mean_complexity));
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidInput, "log-log fit needs at least two distinct m");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = static_cast<int>(x.size());
  fit.enough_points = fit.points >= 4;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      rss += e * e;
    }
    fit.std_err = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

ScalingResult scaling_experiment(const ScalingConfig& config) {
  if (config.trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be positive");
  if (config.sizes.empty()) throw Error(ErrorCode::InvalidInput, "the size ladder is empty");
  ScalingResult result;

  for (std::size_t row = 0; row < config.sizes.size(); ++row) {
    const auto [n, m] = config.sizes[row];
    std::vector<double> complexity(static_cast<std::size_t>(config.trials));
    ScalingRow out{config.kind, n, m, config.trials, 0.0, 0.0, config.seed};

    switch (config.kind) {
      case ExperimentKind::PlanarGrid: {
        const PlanarGridScene scene = gen_planar_grid(n, m);
        std::fill(complexity.begin(), complexity.end(), static_cast<double>(scene.overlay_crossings));
        break;
      }
      case ExperimentKind::Farming:
      case ExperimentKind::Industrial: {
        const ConstructionScene scene = make_scene(config.kind, n, m, config.scene);
        std::vector<std::int64_t> discarded(complexity.size());
        parallel_for(complexity.size(), config.jobs, [&](std::size_t t) {
          Rng rng(config.seed, trial_stream(row, t));
          const std::vector<Point2> sample = sample_domain_uniform(m, rng);
          const EliminationResult sim = simulate_elimination(scene, sample);
          complexity[t] = static_cast<double>(estimated_complexity(sim.records, n));
          discarded[t] = sim.discarded;
        });
        result.discarded += std::accumulate(discarded.begin(), discarded.end(), std::int64_t{0});
        break;
      }
      case ExperimentKind::Realistic: {
        std::vector<char> euler_ok(complexity.size(), 1);
        std::vector<double> slope(complexity.size(), 0.0);
        parallel_for(complexity.size(), config.jobs, [&](std::size_t t) {
          Rng rng(config.seed, trial_stream(row, t));
          const Terrain terrain = random_delaunay_terrain(n, config.max_slope, rng);
          const std::vector<Point2> sites =
              config.surface_sampling ? sample_surface_uniform(terrain, m, rng) : sample_domain_uniform(m, rng);
          const GeodesicGraph graph(terrain, config.refinement);
          const DistanceField field = voronoi_labeling(graph, sites);
          const VoronoiComplexityReport report = complexity_report(field, graph);
          complexity[t] = static_cast<double>(report.total());
          euler_ok[t] = m < 3 || report.voronoi_vertex_count <= 2 * static_cast<std::int64_t>(m) - 2;
          for (Index tri = 0; tri < static_cast<Index>(terrain.triangle_count()); ++tri) {
            slope[t] = std::max(slope[t], terrain.triangle_slope(tri));
          }
        });
        result.euler_checks += config.trials;
        result.euler_violations += std::count(euler_ok.begin(), euler_ok.end(), 0);
        result.max_measured_slope.push_back(*std::max_element(slope.begin(), slope.end()));
        break;
      }
    }
    const MeanAndError s = summarize(complexity);
    out.mean_complexity = s.mean;
    out.std_err = s.std_err;
    result.rows.push_back(out);
  }
  if (result.rows.size() >= 2) {
    bool fittable = true;
    for (const ScalingRow& r : result.rows) fittable = fittable && r.mean_complexity > 0.0;
    std::vector<int> ms;
    for (const ScalingRow& r : result.rows) ms.push_back(r.m);
    fittable = fittable && std::adjacent_find(ms.begin(), ms.end(), std::not_equal_to<>()) != ms.end();
    if (fittable) result.fit = fit_loglog(result.rows);
  }
  return result;
}

GridResult grid_experiment(const GridConfig& config) {
  if (config.trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be positive");
  const Terrain terrain = flat_grid_terrain(config.mesh_cells);
  const GeodesicGraph graph(terrain, config.refinement);
  GridResult result;
  result.trials.resize(static_cast<std::size_t>(config.trials));
  parallel_for(result.trials.size(), config.jobs, [&](std::size_t t) {
    Rng rng(config.seed, trial_stream(0, t));
    const std::vector<Point2> sites = sample_domain_uniform(config.m, rng);
    const DistanceField field = voronoi_labeling(graph, sites);
    GridTrial& out = result.trials[t];
    out.cells = grid_contributors(field, graph, config.m);
    out.voronoi_vertices = count_voronoi_vertices(field, graph);
    out.euler_holds = config.m < 3 || out.voronoi_vertices <= 2 * static_cast<std::int64_t>(config.m) - 2;
  });
  std::int64_t sum = 0, cells = 0;
  for (const GridTrial& t : result.trials) {
    if (!t.euler_holds) ++result.euler_violations;
    for (const GridCellStats& c : t.cells) {
      sum += c.contributor_count;
      ++cells;
      result.max_contributors = std::max(result.max_contributors, c.contributor_count);
      if (static_cast<std::size_t>(c.contributor_count) >= result.histogram.size()) {
        result.histogram.resize(static_cast<std::size_t>(c.contributor_count) + 1, 0);
      }
      ++result.histogram[c.contributor_count];
    }
  }
  result.mean_contributors = static_cast<double>(sum) / static_cast<double>(cells);
  return result;
}

SurvivalResult survival_experiment(int n, int m, int trials, std::uint64_t seed, const SceneOptions& scene_options,
                                   unsigned jobs) {
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be positive");
  const ConstructionScene scene = gen_industrial(n, m, scene_options);
  std::vector<std::array<std::int64_t, 3>> per_trial(static_cast<std::size_t>(trials));
  parallel_for(per_trial.size(), jobs, [&](std::size_t t) {
    Rng rng(seed, trial_stream(0, t));
    const std::vector<Point2> sample = sample_domain_uniform(m, rng);
    const EliminationResult sim = simulate_elimination(scene, sample);
    const auto alive = std::count_if(sim.records.begin(), sim.records.end(),
                                     [](const DominationRecord& r) { return r.alive; });
    per_trial[t] = {static_cast<std::int64_t>(sim.records.size()), static_cast<std::int64_t>(alive), sim.discarded};
  });
  SurvivalResult out;
  for (const auto& t : per_trial) {
    out.occupied += t[0];
    out.alive += t[1];
    out.discarded += t[2];
  }
  if (out.occupied > 0) {
    out.frequency = static_cast<double>(out.alive) / static_cast<double>(out.occupied);
    out.sigma = std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(out.occupied));
  }
  out.bound = kernels::survival_bound(m);
  return out;
}

std::vector<double> entrance_distance_samples(int n, int m, int trials, std::uint64_t seed,
                                              const SceneOptions& scene_options, unsigned jobs) {
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be positive");
  const ConstructionScene scene = gen_industrial(n, m, scene_options);
  const Farm& farm = scene.farms.front();
  std::vector<double> out(static_cast<std::size_t>(trials));
  parallel_for(out.size(), jobs, [&](std::size_t t) {
    Rng rng(seed, trial_stream(0, t));
    double r = std::sqrt(2.0 / m);
    for (int i = 0; i < m; ++i) {
      const Point2 p = rng.unit_square();
      if (farm.contains(p)) r = std::min(r, euclid_dist(p, farm.entrance));
    }
    out[t] = r;
  });
  return out;
}

}  // namespace terravor
