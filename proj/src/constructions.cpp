// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "terravor/error.hpp"

namespace terravor {
namespace {

void check_ridge_guard(int n, int m, const SceneOptions& options) {
  const double hits = m / (options.c * std::ldexp(1.0, n));
  if (hits > options.max_ridge_hits) {
    throw Error(ErrorCode::TooManySitesForRidgeWidth,
                "m = " + std::to_string(m) + " expects " + std::to_string(hits) +
                    " sample points on a ridge block built from n = " + std::to_string(n) + " vertices");
  }
}

RidgeBlock make_ridge(int n, const SceneOptions& options) {
  RidgeBlock ridge;
  ridge.x_position = options.w;
  ridge.rectangle_count = 2 * n;
  ridge.c = options.c;
  ridge.n = n;
  ridge.crossing_cost = 2 * n;
  return ridge;
}

// Distance along `road` from a point on it to the road's last vertex, or -1
// when the point is not on the polyline.
double remaining_road(const std::vector<Point2>& road, Point2 p) {
  constexpr double kOnRoad = 1e-12;
  double tail = 0.0;
  for (std::size_t i = road.size(); i-- > 1;) {
    const Segment2 leg{road[i - 1], road[i]};
    if (point_segment_dist(p, leg) <= kOnRoad) return tail + euclid_dist(p, road[i]);
    tail += leg.length();
  }
  return -1.0;
}

}  // namespace

std::string to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::PlanarGrid:
      return "planar";
    case SceneKind::Farming:
      return "farming";
    case SceneKind::Industrial:
      return "industrial";
  }
  return "unknown";
}

SceneKind parse_scene_kind(const std::string& text) {
  if (text == "planar" || text == "planar_grid") return SceneKind::PlanarGrid;
  if (text == "farming") return SceneKind::Farming;
  if (text == "industrial") return SceneKind::Industrial;
  throw Error(ErrorCode::InvalidInput, "unknown scene kind '" + text + "'");
}

double RidgeBlock::geodesic_width() const { return 1.0 / (c * std::ldexp(1.0, n)); }

std::vector<Segment2> PlanarGridScene::bisectors() const {
  std::vector<Segment2> out;
  for (int i = 1; i < m; ++i) {
    const double y = 0.5 * (sites[i - 1].y + sites[i].y);
    out.push_back({{0.0, y}, {1.0, y}});
  }
  return out;
}

std::vector<Segment2> PlanarGridScene::lines() const {
  std::vector<Segment2> out;
  for (double x : line_x) out.push_back({{x, 0.0}, {x, 1.0}});
  return out;
}

PlanarGridScene gen_planar_grid(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidInput, "planar grid needs n, m >= 1");
  PlanarGridScene scene;
  scene.n = n;
  scene.m = m;
  for (int i = 0; i < m; ++i) scene.sites.push_back({0.05, (i + 0.5) / m});
  for (int l = 0; l < n; ++l) scene.line_x.push_back(0.9 + 0.09 * l / n);
  scene.overlay_crossings = static_cast<std::int64_t>(m - 1) * n;
  return scene;
}

MeshedPlanarGrid mesh_planar_grid(const PlanarGridScene& scene) {
  std::vector<double> xs{0.0, 0.05};
  xs.insert(xs.end(), scene.line_x.begin(), scene.line_x.end());
  xs.push_back(1.0);
  std::vector<double> ys{0.0};
  for (const Point2& s : scene.sites) ys.push_back(s.y);
  ys.push_back(1.0);

  const auto nx = static_cast<Index>(xs.size()), ny = static_cast<Index>(ys.size());
  auto id = [nx](Index i, Index j) { return j * nx + i; };
  std::vector<Point2> vertices;
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) vertices.push_back({xs[i], ys[j]});
  }
  std::vector<Triangle> triangles;
  for (Index j = 0; j + 1 < ny; ++j) {
    for (Index i = 0; i + 1 < nx; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  MeshedPlanarGrid out{Terrain::build(std::move(vertices),
                                      std::vector<double>(static_cast<std::size_t>(nx) * ny, 0.0),
                                      std::move(triangles)),
                       {}};
  for (Index l = 0; l < static_cast<Index>(scene.line_x.size()); ++l) {
    for (Index j = 0; j + 1 < ny; ++j) out.map_edges.push_back(*out.terrain.find_edge(id(l + 2, j), id(l + 2, j + 1)));
  }
  return out;
}

RoadGeometry road_geometry(int i, int m, double w, double row_south) {
  if (i < 0 || m < 1) throw Error(ErrorCode::InvalidInput, "road index and m must be non-negative and positive");
  const double sm = std::sqrt(static_cast<double>(m));
  const double x_i = (2.0 * i + 1.0) / sm;
  RoadGeometry g;
  g.alpha_a = static_cast<double>(i) / m;
  g.alpha_b = (x_i + g.alpha_a) / 2.0;
  g.alpha_c = 1.0 / sm - 2.0 * g.alpha_a;
  g.alpha_d = w - (x_i - g.alpha_b);
  if (g.alpha_c < 0.0 || g.alpha_d < 0.0) {
    throw Error(ErrorCode::NegativeSegment, "road " + std::to_string(i) + " for m = " + std::to_string(m) +
                                                " has a negative leg");
  }
  g.exit = {x_i - g.alpha_b + g.alpha_d, row_south - g.alpha_a - g.alpha_c};
  g.length = g.alpha_a + g.alpha_b + g.alpha_c + g.alpha_d;
  return g;
}

ConstructionScene gen_farming(int n, int m, const SceneOptions& options) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidInput, "farming needs n, m >= 1");
  if (options.c < 2.0) throw Error(ErrorCode::InvalidInput, "farming needs c >= 2");
  check_ridge_guard(n, m, options);
  ConstructionScene scene;
  scene.kind = SceneKind::Farming;
  scene.m = m;
  scene.n = n;
  scene.c = options.c;
  scene.w = options.w;
  scene.ridge = make_ridge(n, options);

  const double unit = options.c * std::sqrt(static_cast<double>(m));
  const double side = 1.0 / unit;
  const int count = static_cast<int>(std::floor(unit / 3.0));
  if (count < 1) throw Error(ErrorCode::InvalidInput, "no farm fits for m = " + std::to_string(m));
  if (options.w <= side) throw Error(ErrorCode::InvalidInput, "the ridge must lie east of the farms");
  scene.columns = 1;
  scene.rows = count;
  for (int j = 0; j < count; ++j) {
    Farm f;
    f.origin = {0.0, 1.0 - 3.0 * j * side};
    f.side = side;
    f.entrance = {side, f.origin.y - side};
    f.exit = {options.w, f.entrance.y};
    f.road_length = options.w - side;
    f.row = j;
    f.road = {f.entrance, f.exit};
    scene.farms.push_back(f);
  }
  return scene;
}

ConstructionScene gen_industrial(int n, int m, const SceneOptions& options) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidInput, "industrial needs n, m >= 1");
  check_ridge_guard(n, m, options);
  ConstructionScene scene;
  scene.kind = SceneKind::Industrial;
  scene.m = m;
  scene.n = n;
  scene.c = options.c;
  scene.w = options.w;
  scene.ridge = make_ridge(n, options);

  const double sm = std::sqrt(static_cast<double>(m));
  const int big_m = static_cast<int>(std::floor(sm / 4.0));
  if (big_m < 1) throw Error(ErrorCode::InvalidInput, "no farm fits for m = " + std::to_string(m));
  const double side = 1.0 / sm;
  scene.columns = big_m;
  scene.rows = big_m;
  for (int row = 0; row < big_m; ++row) {
    for (int i = 0; i < big_m; ++i) {
      Farm f;
      f.origin = {2.0 * i / sm, 1.0 - 3.0 * row / sm};
      f.side = side;
      f.entrance = {(2.0 * i + 1.0) / sm, 1.0 - (3.0 * row + 1.0) / sm};
      const RoadGeometry g = road_geometry(i, m, options.w, f.entrance.y);
      f.exit = g.exit;
      f.road_length = g.length;
      f.row = row;
      f.column = i;
      const Point2 a{f.entrance.x, f.entrance.y - g.alpha_a};
      const Point2 b{a.x - g.alpha_b, a.y};
      const Point2 c{b.x, b.y - g.alpha_c};
      f.road = {f.entrance, a, b, c, g.exit};
      scene.farms.push_back(f);
    }
  }
  return scene;
}

int farm_of(const ConstructionScene& scene, Point2 p) {
  if (scene.farms.empty()) return -1;
  const double side = scene.farms.front().side;
  int candidate = -1;
  if (scene.kind == SceneKind::Industrial) {
    const auto col = static_cast<long>(std::floor(p.x / side));
    const auto band = static_cast<long>(std::floor((1.0 - p.y) / side));
    if (col >= 0 && band >= 0 && col % 2 == 0 && band % 3 == 0 && col / 2 < scene.columns &&
        band / 3 < scene.rows) {
      candidate = static_cast<int>((band / 3) * scene.columns + col / 2);
    }
  } else if (scene.kind == SceneKind::Farming) {
    const auto band = static_cast<long>(std::floor((1.0 - p.y) / side));
    if (band >= 0 && band % 3 == 0 && band / 3 < scene.rows) candidate = static_cast<int>(band / 3);
  }
  if (candidate >= 0 && scene.farms[candidate].contains(p)) return candidate;
  // Points on a shared boundary line can fall just outside the arithmetic
  // candidate; settle them exactly.
  for (std::size_t f = 0; f < scene.farms.size(); ++f) {
    const Farm& farm = scene.farms[f];
    if (std::abs(p.x - farm.origin.x) < side * 2 && std::abs(p.y - farm.origin.y) < side * 2 && farm.contains(p)) {
      return static_cast<int>(f);
    }
  }
  return -1;
}

double construction_geodesic(const ConstructionScene& scene, Point2 p, int target) {
  if (target < 0 || target >= static_cast<int>(scene.farms.size())) {
    throw Error(ErrorCode::InvalidInput, "no farm " + std::to_string(target));
  }
  const Farm& goal = scene.farms[target];
  double to_own_exit = -1.0;
  const Farm* home = nullptr;
  if (const int f = farm_of(scene, p); f >= 0) {
    home = &scene.farms[f];
    to_own_exit = euclid_dist(p, home->entrance) + home->road_length;
  } else {
    for (const Farm& farm : scene.farms) {
      const double along = remaining_road(farm.road, p);
      if (along >= 0.0) {
        home = &farm;
        to_own_exit = along;
        break;
      }
    }
  }
  if (home == nullptr) {
    throw Error(ErrorCode::OffPlateau,
                "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is on no farm or road");
  }
  return to_own_exit + std::abs(home->exit.y - goal.exit.y);
}

EliminationResult simulate_elimination(const ConstructionScene& scene, std::span<const Point2> sample) {
  EliminationResult result;
  const std::size_t farms = scene.farms.size();
  std::vector<double> best(farms, std::numeric_limits<double>::infinity());
  std::vector<Point2> best_point(farms);
  for (const Point2& p : sample) {
    const int f = farm_of(scene, p);
    if (f < 0) {
      ++result.discarded;
      continue;
    }
    const double d = euclid_dist(p, scene.farms[f].entrance);
    if (d < best[f]) {
      best[f] = d;
      best_point[f] = p;
    }
  }

  for (std::size_t f = 0; f < farms; ++f) {
    if (!std::isfinite(best[f])) continue;
    const Farm& farm = scene.farms[f];
    result.records.push_back(
        {static_cast<int>(f), best_point[f], best[f] + farm.road_length, best[f], true});
  }
  // Another farm's dominating point q eliminates p when
  // d(q, e_q) + |e_q - e_p| < d(p, e_p). Only exits within d(p, e_p) along
  // the ridge can compete, so scan outwards in exit order.
  double road_spread = 0.0;
  if (!scene.farms.empty()) {
    const auto [lo, hi] = std::minmax_element(scene.farms.begin(), scene.farms.end(),
                                              [](const Farm& a, const Farm& b) { return a.road_length < b.road_length; });
    road_spread = hi->road_length - lo->road_length;
  }
  std::vector<std::size_t> order(result.records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto exit_y = [&](std::size_t r) { return scene.farms[result.records[r].farm].exit.y; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return exit_y(a) != exit_y(b) ? exit_y(a) < exit_y(b) : a < b;
  });
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    DominationRecord& p = result.records[order[pos]];
    const Farm& pf = scene.farms[p.farm];
    auto eliminates = [&](std::size_t other) {
      const DominationRecord& q = result.records[other];
      const Farm& qf = scene.farms[q.farm];
      const double gap = std::abs(qf.exit.y - pf.exit.y);
      // Road lengths usually coincide; their difference is then exactly 0.
      return q.entrance_distance + (qf.road_length - pf.road_length) + gap < p.entrance_distance;
    };
    auto within_reach = [&](std::size_t other) {
      return std::abs(exit_y(other) - pf.exit.y) < p.entrance_distance + road_spread;
    };
    for (std::size_t up = pos + 1; up < order.size() && p.alive && within_reach(order[up]); ++up) {
      if (eliminates(order[up])) p.alive = false;
    }
    for (std::size_t down = pos; down-- > 0 && p.alive && within_reach(order[down]);) {
      if (eliminates(order[down])) p.alive = false;
    }
  }
  return result;
}

std::int64_t estimated_complexity(std::span<const DominationRecord> records, int n) {
  const auto alive = std::count_if(records.begin(), records.end(), [](const DominationRecord& r) { return r.alive; });
  return static_cast<std::int64_t>(alive) * 2 * n + alive;
}

namespace kernels {

double entrance_cdf_bound(int m, double s) { return m * s * s * std::numbers::pi / 4.0; }

double entrance_cdf_exact(int m, double s) { return 1.0 - std::pow(1.0 - std::numbers::pi * s * s / 4.0, m); }

double no_elimination_bound(int m, double r, int i, int x) {
  const double reach = r - static_cast<double>(i) / m;
  if (reach <= 0.0 || x == 0) return 1.0;
  return std::exp(-m * reach * reach * std::numbers::pi * x / 2.0);
}

double alive_given_counts(int m, double r, std::span<const int> x, std::span<const int> y) {
  double t = 0.0;
  const int reach = static_cast<int>(std::floor(r * m));
  for (int i = 1; i <= reach; ++i) {
    const double gap = r - static_cast<double>(i) / m;
    const int xi = i - 1 < static_cast<int>(x.size()) ? x[i - 1] : 0;
    const int yi = i - 1 < static_cast<int>(y.size()) ? y[i - 1] : 0;
    t += gap * gap * std::numbers::pi * (xi + yi) / 2.0;
  }
  return std::exp(-m * t);
}

double alive_bound(int m, double r) { return 0.5 * std::exp(-2.0 * r * r * r * m * static_cast<double>(m)); }

double markov_exp_bound(double mu) { return std::exp(-2.0 * mu) / 2.0; }

double survival_bound(int m) {
  return std::numbers::pi / (8.0 * std::exp(2.0) * std::cbrt(static_cast<double>(m)));
}

}  // namespace kernels

}  // namespace terravor
