// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/terrain_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "terravor/error.hpp"

namespace terravor {
namespace {

bool next_record(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Terrain read_terrain(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_record(in, line, line_no)) fail(line_no, "missing TERRAIN header");
  std::istringstream header(line);
  std::string tag;
  long nv = -1, nt = -1;
  if (!(header >> tag >> nv >> nt) || tag != "TERRAIN" || nv < 0 || nt < 0) {
    fail(line_no, "expected 'TERRAIN <n_vertices> <n_triangles>'");
  }

  std::vector<Point2> vertices;
  std::vector<double> heights;
  std::vector<Triangle> triangles;
  vertices.reserve(nv);
  heights.reserve(nv);
  triangles.reserve(nt);
  while (next_record(in, line, line_no)) {
    std::istringstream rec(line);
    rec >> tag;
    if (tag == "v") {
      double x = 0, y = 0, z = 0;
      if (!(rec >> x >> y >> z)) fail(line_no, "malformed vertex record");
      vertices.push_back({x, y});
      heights.push_back(z);
    } else if (tag == "t") {
      long i = 0, j = 0, k = 0;
      if (!(rec >> i >> j >> k)) fail(line_no, "malformed triangle record");
      triangles.push_back({static_cast<Index>(i), static_cast<Index>(j), static_cast<Index>(k)});
    } else {
      fail(line_no, "unknown record '" + tag + "'");
    }
  }
  if (static_cast<long>(vertices.size()) != nv || static_cast<long>(triangles.size()) != nt) {
    fail(line_no, "header announces " + std::to_string(nv) + " vertices and " + std::to_string(nt) +
                      " triangles, found " + std::to_string(vertices.size()) + " and " +
                      std::to_string(triangles.size()));
  }
  return Terrain::build(std::move(vertices), std::move(heights), std::move(triangles));
}

Terrain read_terrain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open terrain file " + path);
  return read_terrain(in);
}

void write_terrain(std::ostream& out, const Terrain& terrain) {
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "TERRAIN " << terrain.vertex_count() << ' ' << terrain.triangle_count() << '\n';
  for (std::size_t v = 0; v < terrain.vertex_count(); ++v) {
    const Point2 p = terrain.vertices()[v];
    out << "v " << p.x << ' ' << p.y << ' ' << terrain.heights()[v] << '\n';
  }
  for (const Triangle& t : terrain.triangles()) out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out.precision(old_precision);
}

void write_terrain_file(const std::string& path, const Terrain& terrain) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write terrain file " + path);
  write_terrain(out, terrain);
}

}  // namespace terravor
