#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "terravor/delaunay.hpp"
#include "terravor/error.hpp"
#include "terravor/input_models.hpp"
#include "terravor/random.hpp"

using namespace terravor;

namespace {

// Direct count for one ball, the oracle for the probe estimator.
int ball_count(std::span<const Segment2> edges, Point2 c, double r) {
  int n = 0;
  for (const Segment2& s : edges) n += (s.length() > r && point_segment_dist(c, s) <= r) ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("slope bound and beta") {
  const RealismParams flat = slope_bound(tvtest::flat_square());
  CHECK(flat.xi == 0.0);
  CHECK(flat.beta == 1.0);
  const RealismParams plane = slope_bound(tvtest::grid_terrain(4, [](double x, double) { return x; }));
  CHECK(plane.xi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plane.beta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // Pyramid faces rise 1 over a run of 1/2.
  CHECK(slope_bound(tvtest::pyramid()).xi == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const RealismParams p = slope_bound(random_delaunay_terrain(100, rng.uniform(0.1, 3.0), rng));
    CHECK(p.beta == std::sqrt(1.0 + p.xi * p.xi));
  }
}

TEST_CASE("low density estimate") {
  const std::vector<Segment2> single{{{0, 0.5}, {1, 0.5}}};
  CHECK(low_density_estimate(single) == 1);
  CHECK(ball_count(single, {0.5, 0.5}, 0.1) == 1);

  std::vector<Segment2> parallel;
  for (int i = 0; i < 7; ++i) parallel.push_back({{0, 0.5 + i * 1e-4}, {1, 0.5 + i * 1e-4}});
  CHECK(ball_count(parallel, {0.5, 0.5}, 0.25) == 7);
  CHECK(low_density_estimate(parallel) == 7);

  CHECK_THROWS_AS(low_density_estimate(std::vector<Segment2>{}), Error);

  Rng rng(6);
  const Terrain t = random_delaunay_terrain(100, 0.0, rng);
  const std::vector<Segment2> edges = terrain_segments(t);
  const int estimate = low_density_estimate(edges);
  // Brute force over the same probe family.
  int brute = 0;
  std::vector<Point2> centers;
  for (const Segment2& s : edges) centers.insert(centers.end(), {s.a, s.b, s.midpoint()});
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) centers.push_back({(i + 0.5) / 16, (j + 0.5) / 16});
  }
  double shortest = 1.0;
  for (const Segment2& s : edges) shortest = std::min(shortest, s.length());
  const int top = static_cast<int>(std::ceil(std::log2(1.0 / shortest))) + 1;
  for (int k = 0; k <= top; ++k) {
    for (const Point2& c : centers) brute = std::max(brute, ball_count(edges, c, std::ldexp(1.0, -k)));
  }
  CHECK(estimate == brute);
  CHECK(estimate >= 1);
}

TEST_CASE("low density estimate is monotone under edge insertion") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Segment2> edges;
    for (int i = 0; i < 10; ++i) edges.push_back({rng.unit_square(), rng.unit_square()});
    const int before = low_density_estimate(edges);
    for (int i = 0; i < 5; ++i) edges.push_back({rng.unit_square(), rng.unit_square()});
    CHECK(low_density_estimate(edges) >= before);
  }
}

TEST_CASE("distance sandwich") {
  const Terrain flat = tvtest::grid_terrain(4, [](double, double) { return 0.0; });
  const GeodesicGraph flat_graph(flat, 4);
  const SandwichWitness w = check_distance_sandwich(flat_graph, {0.1, 0.1}, {0.2, 0.15}, 1.0, 0.0);
  CHECK(w.holds);
  CHECK(w.geodesic == doctest::Approx(w.euclid).epsilon(1e-12));

  const Terrain plane = tvtest::grid_terrain(4, [](double x, double) { return x; });
  const GeodesicGraph plane_graph(plane, 8);
  const SandwichWitness tight = check_distance_sandwich(plane_graph, {0, 0.5}, {1, 0.5}, std::sqrt(2.0), 0.0);
  CHECK(tight.geodesic == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(tight.upper_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tight.holds);

  // Coarse Steiner lattices overshoot on short hops, so pairs closer than a
  // few lattice spacings are skipped.
  const Terrain pyr =
      tvtest::grid_terrain(8, [](double x, double y) { return 0.6 * (0.5 - std::max(std::abs(x - 0.5), std::abs(y - 0.5))); });
  const GeodesicGraph pyr_graph(pyr, 4);
  const double beta = slope_bound(pyr).beta;
  Rng rng(17);
  int tested = 0;
  while (tested < 100) {
    const Point2 p = rng.unit_square(), q = rng.unit_square();
    if (euclid_dist(p, q) < 0.2) continue;
    ++tested;
    CHECK(check_distance_sandwich(pyr_graph, p, q, beta, 0.05).holds);
  }
}

TEST_CASE("geodesic disk area") {
  const Terrain flat = flat_grid_terrain(8);
  const GeodesicGraph flat_graph(flat, 8);
  // Graph distances overestimate, so the sampled disk comes out slightly small.
  const DiskAreaCheck d = geodesic_disk_area(flat_graph, {0.5, 0.5}, 0.1);
  CHECK(d.area == doctest::Approx(std::numbers::pi * 0.01).epsilon(0.02));
  CHECK(d.area <= std::numbers::pi * 0.01);
  CHECK(d.lower_ok);
  CHECK(d.upper_ok);
  CHECK_THROWS_AS(geodesic_disk_area(flat_graph, {0.05, 0.5}, 0.1), Error);

  const Terrain plane = tvtest::grid_terrain(8, [](double x, double) { return x; });
  const GeodesicGraph plane_graph(plane, 8);
  const DiskAreaCheck p = geodesic_disk_area(plane_graph, {0.5, 0.5}, 0.1);
  CHECK(p.lower_ok);
  CHECK(p.upper_ok);
  // On z = x the geodesic disk is an ellipse of lifted area pi r^2.
  CHECK(p.area == doctest::Approx(std::numbers::pi * 0.01).epsilon(0.03));

  // Pyramid apex: two refinement levels agree.
  const Terrain pyr = tvtest::pyramid(0.4);
  const GeodesicGraph g4(pyr, 4), g8(pyr, 8);
  const DiskAreaCheck a4 = geodesic_disk_area(g4, {0.5, 0.5}, 0.2);
  const DiskAreaCheck a8 = geodesic_disk_area(g8, {0.5, 0.5}, 0.2);
  CHECK(a4.lower_ok);
  CHECK(a4.upper_ok);
  CHECK(std::abs(a4.area - a8.area) <= 0.02 * a8.area);
}

TEST_CASE("disk area bounds on random terrains") {
  int checks = 0, held = 0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(500, t);
    const Terrain terrain = random_delaunay_terrain(60, 1.0, rng);
    const GeodesicGraph graph(terrain, 3);
    // Radii stay above the lattice spacing of the coarsest triangles.
    for (double r : {0.1, 0.15, 0.2, 0.25}) {
      const DiskAreaCheck d = geodesic_disk_area(graph, {0.5, 0.5}, r, 0.02, 20);
      ++checks;
      held += (d.lower_ok && d.upper_ok) ? 1 : 0;
    }
  }
  CHECK(held == checks);
}
