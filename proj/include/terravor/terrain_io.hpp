// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "terravor/terrain.hpp"

namespace terravor {

// Text format:
//   TERRAIN <n_vertices> <n_triangles>
//   v x y z        (one per vertex)
//   t i j k        (one per triangle, 0-based)
// Lines starting with '#' and blank lines are ignored.

Terrain read_terrain(std::istream& in);
Terrain read_terrain_file(const std::string& path);

/// Writes with 17 significant digits so that a round trip is exact.
void write_terrain(std::ostream& out, const Terrain& terrain);
void write_terrain_file(const std::string& path, const Terrain& terrain);

}  // namespace terravor
