// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "terravor/geometry.hpp"

namespace terravor {

/// Seeded generator with a platform-independent double conversion. Stream
/// `s` of seed `S` is independent of the order in which streams are drawn,
/// so trial `i` always sees the same numbers whatever the thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n - 1}.
  std::uint64_t below(std::uint64_t n);
  double exponential(double rate);
  Point2 unit_square() {
    const double x = uniform();
    return {x, uniform()};
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Runs body(i) for i in [0, count) on up to `jobs` threads (0 = hardware
/// concurrency). Output written by index is schedule independent.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

unsigned default_jobs();

}  // namespace terravor
