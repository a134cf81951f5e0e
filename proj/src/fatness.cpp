// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/fatness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>
#include <string>

#include "terravor/error.hpp"
#include "terravor/random.hpp"

namespace terravor {
namespace {

// Keeps the part of a convex polygon where dot(x, normal) <= offset.
std::vector<Point2> clip(const std::vector<Point2>& poly, Point2 normal, double offset) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const double da = dot(a, normal) - offset, db = dot(b, normal) - offset;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) out.push_back(a + (da / (da - db)) * (b - a));
  }
  return out;
}

double max_vertex_dist(const std::vector<Point2>& poly, Point2 p) {
  double d = 0.0;
  for (const Point2& v : poly) d = std::max(d, euclid_dist(v, p));
  return d;
}

Circle circle_from(Point2 a, Point2 b) { return {0.5 * (a + b), 0.5 * euclid_dist(a, b)}; }

Circle circle_from(Point2 a, Point2 b, Point2 c) {
  const Point2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (d == 0.0) {
    // Collinear: the widest pair spans the others.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
  const Point2 center{a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d};
  return {center, std::max({euclid_dist(center, a), euclid_dist(center, b), euclid_dist(center, c)})};
}

bool covers(const Circle& c, Point2 p) { return euclid_dist(c.center, p) <= c.radius * (1.0 + 1e-12); }

// Signed distances of p from the supporting lines of a convex CCW polygon;
// returns the smallest (positive inside).
double inner_distance(std::span<const Point2> poly, Point2 p) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const double len = euclid_dist(a, b);
    if (len == 0.0) continue;
    d = std::min(d, cross(b - a, p - a) / len);
  }
  return d;
}

Point2 polygon_centroid(std::span<const Point2> poly) {
  Point2 s{0.0, 0.0};
  for (const Point2& p : poly) s = s + p;
  return (1.0 / static_cast<double>(poly.size())) * s;
}

// Second-nearest-neighbour distance of sample[index] and the displacement
// towards its nearest neighbour.
std::pair<double, Point2> neighbours(std::span<const Point2> sample, std::size_t index) {
  double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
  Point2 towards{0.0, 0.0};
  for (std::size_t k = 0; k < sample.size(); ++k) {
    if (k == index) continue;
    const Point2 delta = torus_delta(sample[index], sample[k]);
    const double d = norm(delta);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      towards = delta;
    } else if (d < d2) {
      d2 = d;
    }
  }
  return {d2, towards};
}

}  // namespace

Point2 torus_delta(Point2 a, Point2 b) {
  auto wrap = [](double d) { return d - std::round(d); };
  return {wrap(b.x - a.x), wrap(b.y - a.y)};
}

double torus_dist(Point2 a, Point2 b) { return norm(torus_delta(a, b)); }

TorusVoronoiCell torus_cell(std::span<const Point2> sample, std::size_t index) {
  const int m = static_cast<int>(sample.size());
  if (m < 2) throw Error(ErrorCode::InvalidInput, "a torus cell needs at least two sites");
  if (index >= sample.size()) throw Error(ErrorCode::InvalidInput, "site index out of range");
  TorusVoronoiCell cell;
  cell.site = sample[index];
  cell.m = m;
  cell.replication = m <= 4 ? 5 : 3;
  const int reach = cell.replication / 2;

  struct Generator {
    double dist;
    Point2 q;
  };
  std::vector<Generator> generators;
  generators.reserve(sample.size() * cell.replication * cell.replication);
  for (std::size_t k = 0; k < sample.size(); ++k) {
    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        if (k == index && dx == 0 && dy == 0) continue;
        const Point2 q{sample[k].x + dx, sample[k].y + dy};
        const double d = euclid_dist(q, cell.site);
        if (d == 0.0) throw Error(ErrorCode::InvalidInput, "duplicate site " + std::to_string(k));
        generators.push_back({d, q});
      }
    }
  }
  std::sort(generators.begin(), generators.end(), [](const Generator& a, const Generator& b) {
    return a.dist != b.dist ? a.dist < b.dist : std::tie(a.q.x, a.q.y) < std::tie(b.q.x, b.q.y);
  });

  const Point2 s = cell.site;
  cell.polygon = {{s.x - 1.0, s.y - 1.0}, {s.x + 1.0, s.y - 1.0}, {s.x + 1.0, s.y + 1.0}, {s.x - 1.0, s.y + 1.0}};
  double radius = max_vertex_dist(cell.polygon, s);
  for (const Generator& g : generators) {
    // A bisector lies at half the generator distance; farther ones miss.
    if (g.dist > 2.0 * radius) break;
    const Point2 normal = g.q - s;
    cell.polygon = clip(cell.polygon, normal, dot(0.5 * (g.q + s), normal));
    radius = max_vertex_dist(cell.polygon, s);
  }

  if (cell.replication == 3) {
    const double diameter = polygon_diameter(cell.polygon);
    if (diameter >= 0.5) {
      throw Error(ErrorCode::CellTooLarge, "cell diameter " + std::to_string(diameter) +
                                               " is too large for the 3 x 3 copy block");
    }
  } else if (radius >= 1.0) {
    throw Error(ErrorCode::CellTooLarge, "cell reaches " + std::to_string(radius) + " from its site");
  }
  return cell;
}

Circle smallest_enclosing_circle(std::span<const Point2> points) {
  if (points.empty()) return {};
  Circle c{points[0], 0.0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (covers(c, points[i])) continue;
    c = {points[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(c, points[j])) continue;
      c = circle_from(points[i], points[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!covers(c, points[k])) c = circle_from(points[i], points[j], points[k]);
      }
    }
  }
  return c;
}

Circle largest_inscribed_circle(std::span<const Point2> polygon, double tolerance) {
  if (polygon.size() < 3) return {};
  // Offset every edge inwards by r and ask whether anything is left.
  auto shrink = [&](double r) {
    std::vector<Point2> core(polygon.begin(), polygon.end());
    for (std::size_t i = 0; i < polygon.size() && !core.empty(); ++i) {
      const Point2 a = polygon[i], b = polygon[(i + 1) % polygon.size()];
      const double len = euclid_dist(a, b);
      if (len == 0.0) continue;
      // Outward normal of a CCW edge.
      const Point2 normal{(b.y - a.y) / len, -(b.x - a.x) / len};
      core = clip(core, normal, dot(a, normal) - r);
    }
    return core;
  };
  double lo = 0.0, hi = 0.5 * polygon_diameter(polygon);
  std::vector<Point2> best(polygon.begin(), polygon.end());
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    std::vector<Point2> core = shrink(mid);
    if (!core.empty()) {
      lo = mid;
      best = std::move(core);
    } else {
      hi = mid;
    }
  }
  // Every point of the last feasible core is at least `lo` inside.
  return {polygon_centroid(best), lo};
}

double polygon_area(std::span<const Point2> polygon) {
  double a = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) a += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  return 0.5 * a;
}

double polygon_diameter(std::span<const Point2> polygon) {
  double d = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    for (std::size_t j = i + 1; j < polygon.size(); ++j) d = std::max(d, euclid_dist(polygon[i], polygon[j]));
  }
  return d;
}

FatnessRecord polygon_fatness(std::span<const Point2> polygon) {
  FatnessRecord f;
  f.diameter = polygon_diameter(polygon);
  f.R = smallest_enclosing_circle(polygon).radius;
  f.r = largest_inscribed_circle(polygon).radius;
  f.fatness = f.r > 0.0 ? f.R / f.r : std::numeric_limits<double>::infinity();
  return f;
}

FatnessRecord cell_fatness(const TorusVoronoiCell& cell) { return polygon_fatness(cell.polygon); }

double tail_radius(int m, int j) { return 4.0 * std::pow(3.0, -0.25) * std::sqrt(static_cast<double>(j) / (m - 1)); }

double tail_bound(int j) { return 6.0 * std::exp(1.0 - j); }

std::vector<TailCheck> diameter_tail_check(int m, int trials, std::span<const int> js, std::uint64_t seed,
                                           unsigned jobs) {
  if (m < 2 || trials < 1) throw Error(ErrorCode::InvalidInput, "tail check needs m >= 2 and trials >= 1");
  std::vector<double> diameters(static_cast<std::size_t>(trials));
  parallel_for(diameters.size(), jobs, [&](std::size_t t) {
    Rng rng(seed, t);
    std::vector<Point2> sample(static_cast<std::size_t>(m));
    for (Point2& p : sample) p = rng.unit_square();
    diameters[t] = polygon_diameter(torus_cell(sample, 0).polygon);
  });
  std::vector<TailCheck> out;
  for (int j : js) {
    if (j < 2) throw Error(ErrorCode::InvalidInput, "tail index j must be at least 2");
    TailCheck c;
    c.j = j;
    c.radius = tail_radius(m, j);
    c.bound = tail_bound(j);
    c.trials = trials;
    const auto over = std::count_if(diameters.begin(), diameters.end(), [&](double d) { return d > c.radius; });
    c.empirical = static_cast<double>(over) / trials;
    c.sigma = std::sqrt(std::max(c.empirical, c.bound) * (1.0 - std::min(1.0, std::max(c.empirical, c.bound))) /
                        trials);
    out.push_back(c);
  }
  return out;
}

TailCheck diameter_tail_check(int m, int trials, int j, std::uint64_t seed, unsigned jobs) {
  const int js[] = {j};
  return diameter_tail_check(m, trials, js, seed, jobs).front();
}

double second_nn_radius(int m, int i) { return std::sqrt(1.0 / (i * (m - 1.0) * std::numbers::pi)); }

std::vector<BandFrequency> second_nn_check(int m, int trials, std::uint64_t seed, int i_lo, int i_hi, unsigned jobs) {
  if (m < 3 || trials < 1) throw Error(ErrorCode::InvalidInput, "second-neighbour check needs m >= 3");
  std::vector<double> x(static_cast<std::size_t>(trials));
  parallel_for(x.size(), jobs, [&](std::size_t t) {
    Rng rng(seed, t);
    std::vector<Point2> sample(static_cast<std::size_t>(m));
    for (Point2& p : sample) p = rng.unit_square();
    x[t] = neighbours(sample, 0).first;
  });
  std::vector<BandFrequency> out;
  for (int i = i_lo; i <= i_hi; ++i) {
    BandFrequency b;
    b.i = i;
    b.lower = second_nn_radius(m, i + 1);
    b.upper = second_nn_radius(m, i);
    b.bound = 1.0 / (static_cast<double>(i) * i);
    const auto hits = std::count_if(x.begin(), x.end(), [&](double v) { return v >= b.lower && v <= b.upper; });
    b.empirical = static_cast<double>(hits) / trials;
    const double p = std::max(b.empirical, b.bound);
    b.sigma = std::sqrt(p * (1.0 - p) / trials);
    out.push_back(b);
  }
  return out;
}

WitnessCheck inscribed_witness_check(std::span<const Point2> sample, std::size_t index) {
  const int m = static_cast<int>(sample.size());
  if (m < 3) throw Error(ErrorCode::InvalidInput, "the witness needs a second nearest neighbour");
  const auto [x, towards] = neighbours(sample, index);
  WitnessCheck w;
  double rho;
  if (x >= second_nn_radius(m, 1)) {
    w.band = 0;
    rho = second_nn_radius(m, 1);
  } else {
    // X lies in [r_{i+1}, r_i] exactly when i <= 1 / (X^2 (m - 1) pi) <= i + 1.
    w.band = std::max(1, static_cast<int>(std::floor(1.0 / (x * x * (m - 1.0) * std::numbers::pi))));
    while (w.band > 1 && x > second_nn_radius(m, w.band)) --w.band;
    while (x < second_nn_radius(m, w.band + 1)) ++w.band;
    rho = second_nn_radius(m, w.band + 1);
  }
  w.radius = rho / 4.0;
  const Point2 away = (-1.0 / norm(towards)) * towards;
  const TorusVoronoiCell cell = torus_cell(sample, index);
  w.center = cell.site + w.radius * away;
  w.contained = inner_distance(cell.polygon, w.center) >= w.radius * (1.0 - 1e-12);
  return w;
}

MarkovCheck markov_exp_check(MarkovDistribution distribution, double mu, int trials, std::uint64_t seed) {
  if (!(mu > 0.0) || trials < 1) throw Error(ErrorCode::InvalidInput, "Markov check needs mu > 0 and trials >= 1");
  MarkovCheck c;
  c.mu = mu;
  c.rhs = std::exp(-2.0 * mu) / 2.0;
  if (distribution == MarkovDistribution::Constant) {
    c.lhs = std::exp(-mu);
  } else {
    Rng rng(seed);
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double x = distribution == MarkovDistribution::Uniform ? rng.uniform(0.0, 2.0 * mu)
                                                                   : rng.exponential(1.0 / mu);
      sum += std::exp(-x);
    }
    c.lhs = sum / trials;
  }
  c.holds = c.lhs >= c.rhs;
  return c;
}

std::vector<FatnessTrial> fatness_experiment(int m, int trials, std::uint64_t seed, bool all_cells, unsigned jobs) {
  if (m < 2 || trials < 1) throw Error(ErrorCode::InvalidInput, "fatness needs m >= 2 and trials >= 1");
  std::vector<std::vector<FatnessTrial>> per_trial(static_cast<std::size_t>(trials));
  parallel_for(per_trial.size(), jobs, [&](std::size_t t) {
    Rng rng(seed, t);
    std::vector<Point2> sample(static_cast<std::size_t>(m));
    for (Point2& p : sample) p = rng.unit_square();
    const std::size_t cells = all_cells ? sample.size() : 1;
    for (std::size_t i = 0; i < cells; ++i) {
      per_trial[t].push_back({static_cast<int>(t), m, cell_fatness(torus_cell(sample, i))});
    }
  });
  std::vector<FatnessTrial> out;
  for (auto& t : per_trial) out.insert(out.end(), t.begin(), t.end());
  return out;
}

}  // namespace terravor
