// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/input_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "terravor/error.hpp"

namespace terravor {

double beta_from_slope(double xi) { return std::sqrt(1.0 + xi * xi); }

RealismParams slope_bound(const Terrain& terrain) {
  RealismParams out;
  for (Index t = 0; t < static_cast<Index>(terrain.triangle_count()); ++t) {
    out.xi = std::max(out.xi, terrain.triangle_slope(t));
  }
  out.beta = beta_from_slope(out.xi);
  return out;
}

std::vector<Segment2> terrain_segments(const Terrain& terrain) {
  std::vector<Segment2> out;
  out.reserve(terrain.edge_count());
  for (const Edge& e : terrain.edges()) out.push_back({terrain.vertex(e.a), terrain.vertex(e.b)});
  return out;
}

int low_density_estimate(std::span<const Segment2> edges, const ProbeConfig& probes) {
  if (edges.empty()) throw Error(ErrorCode::EmptyEdgeSet, "low density needs at least one edge");

  std::vector<double> lengths(edges.size());
  double shortest = std::numeric_limits<double>::infinity();
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    lengths[i] = edges[i].length();
    if (lengths[i] > 0.0) shortest = std::min(shortest, lengths[i]);
    for (Point2 p : {edges[i].a, edges[i].b}) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
  }
  if (!std::isfinite(shortest)) return 0;

  std::vector<Point2> centers;
  centers.reserve(3 * edges.size() + static_cast<std::size_t>(probes.grid) * probes.grid);
  for (const Segment2& s : edges) {
    centers.push_back(s.a);
    centers.push_back(s.b);
    centers.push_back(s.midpoint());
  }
  for (int j = 0; j < probes.grid; ++j) {
    for (int i = 0; i < probes.grid; ++i) {
      centers.push_back({x0 + (i + 0.5) * (x1 - x0) / probes.grid, y0 + (j + 0.5) * (y1 - y0) / probes.grid});
    }
  }

  // One level past the shortest edge so that every edge is longer than some
  // probe radius.
  const int top_level =
      std::min(probes.max_level, std::max(0, static_cast<int>(std::ceil(std::log2(1.0 / shortest)))) + 1);
  const double span = std::max(x1 - x0, y1 - y0);
  int best = 0;
  std::vector<std::uint32_t> stamp(edges.size(), 0);
  std::uint32_t probe_id = 0;

  for (int level = 0; level <= top_level; ++level) {
    const double r = std::ldexp(1.0, -level);
    // Bucket the edges longer than r on a grid of cell size ~ r.
    const int g = std::clamp(static_cast<int>(span / r), 1, 256);
    const double cell = span / g;
    auto cell_of = [&](double v, double lo) { return std::clamp(static_cast<int>((v - lo) / cell), 0, g - 1); };
    std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(g) * g);
    bool any = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!(lengths[i] > r)) continue;
      any = true;
      const Segment2& s = edges[i];
      const int cx0 = cell_of(std::min(s.a.x, s.b.x), x0), cx1 = cell_of(std::max(s.a.x, s.b.x), x0);
      const int cy0 = cell_of(std::min(s.a.y, s.b.y), y0), cy1 = cell_of(std::max(s.a.y, s.b.y), y0);
      for (int cy = cy0; cy <= cy1; ++cy) {
        for (int cx = cx0; cx <= cx1; ++cx) buckets[cy * g + cx].push_back(static_cast<std::uint32_t>(i));
      }
    }
    if (!any) continue;
    for (const Point2& c : centers) {
      ++probe_id;
      int count = 0;
      const int cx0 = cell_of(c.x - r, x0), cx1 = cell_of(c.x + r, x0);
      const int cy0 = cell_of(c.y - r, y0), cy1 = cell_of(c.y + r, y0);
      for (int cy = cy0; cy <= cy1; ++cy) {
        for (int cx = cx0; cx <= cx1; ++cx) {
          for (std::uint32_t i : buckets[cy * g + cx]) {
            if (stamp[i] == probe_id) continue;
            stamp[i] = probe_id;
            if (point_segment_dist(c, edges[i]) <= r) ++count;
          }
        }
      }
      best = std::max(best, count);
    }
  }
  return best;
}

SandwichWitness check_distance_sandwich(const GeodesicGraph& graph, Point2 p, Point2 q, double beta,
                                        double eps) {
  SandwichWitness w;
  w.euclid = euclid_dist(p, q);
  w.geodesic = geodesic_distance(graph, p, q);
  if (w.euclid == 0.0) {
    w.holds = w.geodesic == 0.0;
    return w;
  }
  w.lower_ratio = w.geodesic / w.euclid;
  w.upper_ratio = w.geodesic / ((1.0 + eps) * beta * w.euclid);
  w.holds = w.lower_ratio >= 1.0 - kRoundoff && w.upper_ratio <= 1.0 + kRoundoff;
  return w;
}

DiskAreaCheck geodesic_disk_area(const GeodesicGraph& graph, Point2 center, double r, double slack,
                                 int samples_per_radius) {
  if (!(r > 0.0) || center.x - r < 0.0 || center.x + r > 1.0 || center.y - r < 0.0 || center.y + r > 1.0) {
    throw Error(ErrorCode::DiskClipped, "disk of radius " + std::to_string(r) + " around (" +
                                            std::to_string(center.x) + ", " + std::to_string(center.y) +
                                            ") leaves the domain");
  }
  const Terrain& terrain = graph.terrain();
  const Point2 sites[] = {center};
  const DistanceField field = multi_source_field(graph, sites);
  const double xi = slope_bound(terrain).xi;
  const double beta = beta_from_slope(xi);
  const double h = r / samples_per_radius;

  DiskAreaCheck out;
  for (Index t = 0; t < static_cast<Index>(terrain.triangle_count()); ++t) {
    const Triangle& tri = terrain.triangles()[t];
    const Point2 a = terrain.vertex(tri[0]), b = terrain.vertex(tri[1]), c = terrain.vertex(tri[2]);
    // Only the planar disk can hold points of the geodesic disk.
    if (std::max({a.x, b.x, c.x}) < center.x - r || std::min({a.x, b.x, c.x}) > center.x + r ||
        std::max({a.y, b.y, c.y}) < center.y - r || std::min({a.y, b.y, c.y}) > center.y + r) {
      continue;
    }
    const double longest = std::max({euclid_dist(a, b), euclid_dist(b, c), euclid_dist(c, a)});
    const int s = std::max(1, static_cast<int>(std::ceil(longest / h)));
    const double sub_area = terrain.lifted_area(t) / (static_cast<double>(s) * s);
    auto at = [&](double i, double j) { return a + (i / s) * (b - a) + (j / s) * (c - a); };
    for (int j = 0; j < s; ++j) {
      for (int i = 0; i + j < s; ++i) {
        const Point2 up = at(i + 1.0 / 3.0, j + 1.0 / 3.0);
        if (euclid_dist(up, center) <= r && field_distance_at(graph, field, up) <= r) out.area += sub_area;
        if (i + j + 2 <= s) {
          const Point2 down = at(i + 2.0 / 3.0, j + 2.0 / 3.0);
          if (euclid_dist(down, center) <= r && field_distance_at(graph, field, down) <= r) out.area += sub_area;
        }
      }
    }
  }
  out.lower_bound = std::numbers::pi * (r / beta) * (r / beta);
  out.upper_bound = std::numbers::pi * beta * r * r;
  out.lower_ok = out.area >= out.lower_bound * (1.0 - slack);
  out.upper_ok = out.area <= out.upper_bound * (1.0 + slack);
  return out;
}

}  // namespace terravor
