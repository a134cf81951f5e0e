// Small terrains shared by the unit tests.

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "terravor/delaunay.hpp"
#include "terravor/error.hpp"
#include "terravor/terrain.hpp"

namespace tvtest {

using terravor::Index;
using terravor::Point2;
using terravor::Terrain;
using terravor::Triangle;

inline Terrain flat_square() {
  return Terrain::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {0, 0, 0, 0}, {{0, 1, 2}, {0, 2, 3}});
}

// Fan of four triangles around a centre vertex of height `apex`.
inline Terrain pyramid(double apex = 1.0) {
  return Terrain::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}, {0, 0, 0, 0, apex},
                        {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
}

// Regular grid with heights from z(x, y).
template <class F>
Terrain grid_terrain(int cells, F&& z) {
  Terrain flat = terravor::flat_grid_terrain(cells);
  std::vector<Point2> pts(flat.vertices().begin(), flat.vertices().end());
  std::vector<double> h;
  for (const Point2& p : pts) h.push_back(z(p.x, p.y));
  return Terrain::build(pts, h, std::vector<Triangle>(flat.triangles().begin(), flat.triangles().end()));
}

// Ridge of height h along x = 1/2. Wall midpoints are vertices so that each
// one shares a triangle with the whole ridge edge.
inline Terrain tent(double h) {
  std::vector<Point2> v{{0, 0}, {0, 0.5}, {0, 1}, {0.5, 0}, {0.5, 1}, {1, 0}, {1, 0.5}, {1, 1}};
  std::vector<double> z{0, 0, 0, h, h, 0, 0, 0};
  std::vector<Triangle> t{{0, 3, 1}, {1, 3, 4}, {1, 4, 2}, {3, 5, 6}, {3, 6, 4}, {4, 6, 7}};
  return Terrain::build(v, z, t);
}

// Code of the Error thrown by fn, or nullopt when it returns normally.
template <class F>
std::optional<terravor::ErrorCode> error_code_of(F&& fn) {
  try {
    fn();
  } catch (const terravor::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace tvtest
