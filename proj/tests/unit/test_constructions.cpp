#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "terravor/constructions.hpp"
#include "terravor/error.hpp"
#include "terravor/predicates.hpp"
#include "terravor/random.hpp"

using namespace terravor;

namespace {

// Quadratic elimination oracle over all pairs of occupied farms.
std::vector<bool> brute_alive(const ConstructionScene& scene, const EliminationResult& res) {
  std::vector<bool> alive;
  for (const DominationRecord& p : res.records) {
    bool ok = true;
    for (const DominationRecord& q : res.records) {
      if (q.farm == p.farm) continue;
      const Farm& pf = scene.farms[p.farm];
      const Farm& qf = scene.farms[q.farm];
      const double via_q = q.entrance_distance + qf.road_length + std::abs(qf.exit.y - pf.exit.y);
      if (via_q < p.entrance_distance + pf.road_length) ok = false;
    }
    alive.push_back(ok);
  }
  return alive;
}

}  // namespace

TEST_CASE("planar grid crossings") {
  CHECK(gen_planar_grid(1, 2).overlay_crossings == 1);
  const PlanarGridScene s = gen_planar_grid(5, 4);
  CHECK(s.overlay_crossings == 15);
  int brute = 0;
  for (const Segment2& b : s.bisectors()) {
    for (const Segment2& l : s.lines()) brute += segments_intersect(b, l) ? 1 : 0;
  }
  CHECK(brute == 15);
  for (std::size_t i = 1; i < s.sites.size(); ++i) {
    CHECK(s.sites[i].y - s.sites[i - 1].y == doctest::Approx(0.25).epsilon(1e-12));
  }

  const MeshedPlanarGrid mesh = mesh_planar_grid(s);
  CHECK(mesh.map_edges.size() == 5 * (4 + 1));
  for (Index e : mesh.map_edges) {
    const Edge& edge = mesh.terrain.edges()[e];
    CHECK(mesh.terrain.vertex(edge.a).x == mesh.terrain.vertex(edge.b).x);
  }
  CHECK(tvtest::error_code_of([] { gen_planar_grid(0, 3); }) == ErrorCode::InvalidInput);
}

TEST_CASE("farming layout") {
  const ConstructionScene s = gen_farming(30, 9, {.c = 3.0});
  REQUIRE(s.farms.size() == 3);
  for (const Farm& f : s.farms) {
    CHECK(f.side == doctest::Approx(1.0 / 9).epsilon(1e-12));
    CHECK(f.side * std::sqrt(2.0) == doctest::Approx(std::sqrt(2.0) / (3.0 * 3.0)).epsilon(1e-12));
    CHECK(f.exit.x == 0.8);
    CHECK(f.road_length == doctest::Approx(0.8 - f.side).epsilon(1e-12));
  }
  CHECK(s.farms[0].origin.y - s.farms[1].origin.y == doctest::Approx(3.0 / 9).epsilon(1e-12));
  CHECK(tvtest::error_code_of([] { gen_farming(30, 9, {.c = 1.5}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("road geometry") {
  const RoadGeometry g = road_geometry(0, 16, 0.5);
  CHECK(g.length == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(g.alpha_a == 0.0);
  for (int m : {64, 256, 1024}) {
    const int cols = static_cast<int>(std::sqrt(m) / 4);
    for (int i = 0; i < cols; ++i) {
      const RoadGeometry r = road_geometry(i, m, 0.8);
      CHECK(r.length == doctest::Approx(1.0 / std::sqrt(m) + 0.8).epsilon(1e-12));
      CHECK(r.exit.x == doctest::Approx(0.8).epsilon(1e-12));
      if (i > 0) {
        CHECK(r.exit.y - road_geometry(i - 1, m, 0.8).exit.y == doctest::Approx(1.0 / m).epsilon(1e-9));
      }
    }
  }
  CHECK(tvtest::error_code_of([] { road_geometry(3, 16, 0.8); }) == ErrorCode::NegativeSegment);
  CHECK(tvtest::error_code_of([] { road_geometry(0, 16, 0.05); }) == ErrorCode::NegativeSegment);
}

TEST_CASE("industrial layout and farm lookup") {
  const ConstructionScene s = gen_industrial(40, 1024);
  CHECK(s.columns == 8);
  CHECK(s.farms.size() == 64);
  for (const Farm& f : s.farms) {
    CHECK(f.road.front().x == f.entrance.x);
    CHECK(f.road.back().x == doctest::Approx(f.exit.x).epsilon(1e-12));
    double length = 0;
    for (std::size_t i = 1; i < f.road.size(); ++i) length += euclid_dist(f.road[i - 1], f.road[i]);
    CHECK(length == doctest::Approx(f.road_length).epsilon(1e-12));
  }
  Rng rng(8);
  for (int i = 0; i < 20000; ++i) {
    const Point2 p = rng.unit_square();
    int brute = -1;
    for (std::size_t f = 0; f < s.farms.size() && brute < 0; ++f) {
      if (s.farms[f].contains(p)) brute = static_cast<int>(f);
    }
    CHECK(farm_of(s, p) == brute);
  }
}

TEST_CASE("ridge guard") {
  CHECK(tvtest::error_code_of([] { gen_industrial(5, 16); }) == ErrorCode::TooManySitesForRidgeWidth);
  CHECK(tvtest::error_code_of([] { gen_farming(5, 16); }) == ErrorCode::TooManySitesForRidgeWidth);
  CHECK_NOTHROW(gen_industrial(20, 16));
  const ConstructionScene s = gen_industrial(20, 16);
  CHECK(s.ridge.geodesic_width() == doctest::Approx(1.0 / (2.0 * std::ldexp(1.0, 20))).epsilon(1e-12));
  CHECK(s.ridge.crossing_cost == 40);
}

TEST_CASE("construction distances") {
  const ConstructionScene s = gen_industrial(40, 256);
  REQUIRE(s.farms.size() == 16);
  const Farm& f0 = s.farms[0];
  const Farm& f1 = s.farms[1];
  CHECK(construction_geodesic(s, f0.entrance, 0) == doctest::Approx(f0.road_length).epsilon(1e-12));
  CHECK(construction_geodesic(s, f0.entrance, 1) ==
        doctest::Approx(f0.road_length + 1.0 / 256).epsilon(1e-9));
  const Point2 inside{f1.origin.x + 0.2 * f1.side, f1.origin.y - 0.3 * f1.side};
  CHECK(construction_geodesic(s, inside, 1) ==
        doctest::Approx(euclid_dist(inside, f1.entrance) + f1.road_length).epsilon(1e-12));
  CHECK(construction_geodesic(s, f1.exit, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tvtest::error_code_of([&] { construction_geodesic(s, {0.95, 0.02}, 0); }) == ErrorCode::OffPlateau);
}

TEST_CASE("elimination agrees with the pairwise oracle") {
  for (const bool farming : {false, true}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int m = 1024;
      const ConstructionScene s = farming ? gen_farming(40, m) : gen_industrial(40, m);
      Rng rng(90, static_cast<std::uint64_t>(trial));
      std::vector<Point2> sample;
      for (int i = 0; i < m; ++i) sample.push_back(rng.unit_square());
      const EliminationResult res = simulate_elimination(s, sample);
      const std::vector<bool> want = brute_alive(s, res);
      REQUIRE(want.size() == res.records.size());
      std::int64_t inside = 0;
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(res.records[i].alive == want[i]);
      for (const Point2& p : sample) inside += farm_of(s, p) >= 0 ? 1 : 0;
      CHECK(inside + res.discarded == m);
      std::int64_t alive = 0;
      for (const DominationRecord& r : res.records) alive += r.alive ? 1 : 0;
      CHECK(estimated_complexity(res.records, 40) == alive * 81);
    }
  }
}

TEST_CASE("single occupied farm survives") {
  const ConstructionScene s = gen_industrial(40, 256);
  const Farm& f = s.farms[5];
  const std::vector<Point2> sample{{f.origin.x + 0.5 * f.side, f.origin.y - 0.5 * f.side}};
  const EliminationResult res = simulate_elimination(s, sample);
  REQUIRE(res.records.size() == 1);
  CHECK(res.records[0].farm == 5);
  CHECK(res.records[0].alive);
  CHECK(res.records[0].entrance_distance == doctest::Approx(f.side / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("probability kernels") {
  using namespace kernels;
  for (int m : {16, 100, 1024}) {
    CHECK(entrance_cdf_bound(m, 1.0 / std::sqrt(m)) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    for (double s : {0.1, 0.5, 1.0}) {
      const double x = s / std::sqrt(m);
      CHECK(entrance_cdf_exact(m, x) <= entrance_cdf_bound(m, x) + 1e-15);
    }
    const double r = std::pow(m, -2.0 / 3.0);
    CHECK(alive_bound(m, r) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(survival_bound(m) == doctest::Approx(std::numbers::pi / (8 * std::exp(2.0) * std::cbrt(m))).epsilon(1e-12));
  }
  CHECK(no_elimination_bound(100, 0.5, 3, 0) == 1.0);
  CHECK(no_elimination_bound(100, 0.01, 3, 4) == 1.0);
  CHECK(no_elimination_bound(100, 0.05, 3, 2) == doctest::Approx(std::exp(-100 * 0.02 * 0.02 * std::numbers::pi)));

  const std::vector<int> none;
  CHECK(alive_given_counts(100, 0.05, none, none) == 1.0);
  const std::vector<int> x{0, 0, 2}, y{0, 0, 0};
  CHECK(alive_given_counts(100, 0.05, x, y) == doctest::Approx(no_elimination_bound(100, 0.05, 3, 2)));
  CHECK(markov_exp_bound(0.0) == 0.5);
  CHECK(markov_exp_bound(1.0) == doctest::Approx(0.5 * std::exp(-2.0)));
}
