// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. `acceptance` runs every criterion; `acceptance 3 7` runs
// the listed ones. Each criterion prints one PASS/FAIL line; the exit status
// is non-zero when any listed criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "terravor/cli.hpp"
#include "terravor/constructions.hpp"
#include "terravor/delaunay.hpp"
#include "terravor/error.hpp"
#include "terravor/experiments.hpp"
#include "terravor/fatness.hpp"
#include "terravor/input_models.hpp"
#include "terravor/predicates.hpp"
#include "terravor/voronoi.hpp"

namespace tv = terravor;

namespace {

constexpr std::uint64_t kSeed = 20260416;

struct Outcome {
  bool pass = false;
  std::string detail;
  double budget_s = 0.0;
  double elapsed_s = 0.0;
};

struct EulerTally {
  std::int64_t runs = 0;
  std::int64_t violations = 0;
};

// Euler checks gathered from the Voronoi runs of criteria 2, 6 and 7.
std::map<int, EulerTally> g_euler;
// CSV renderings of each stochastic criterion's raw results.
std::map<int, std::string> g_csv;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string num(double v) { return fmt("%.17g", v); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o{true, "", 1.0};
  double worst_len = 0.0, worst_exit = 0.0, worst_gap = 0.0;
  for (int m : {64, 256, 1024}) {
    const tv::ConstructionScene scene = tv::gen_industrial(32, m);
    const double expected = 1.0 / std::sqrt(static_cast<double>(m)) + scene.w;
    for (const tv::Farm& f : scene.farms) {
      worst_len = std::max(worst_len, std::abs(f.road_length - expected));
      worst_exit = std::max(worst_exit, std::abs(f.exit.x - scene.w));
    }
    for (std::size_t i = 1; i < scene.farms.size(); ++i) {
      const tv::Farm& a = scene.farms[i - 1];
      const tv::Farm& b = scene.farms[i];
      if (a.row != b.row) continue;
      worst_gap = std::max(worst_gap, std::abs(std::abs(a.exit.y - b.exit.y) - 1.0 / m));
    }
  }
  o.pass = worst_len <= 1e-12 && worst_exit <= 1e-12 && worst_gap <= 1e-12;
  o.detail = fmt("max |len - (1/sqrt(m)+w)| = %.3g, max |exit.x - w| = %.3g, max |gap - 1/m| = %.3g", worst_len,
                 worst_exit, worst_gap);
  return o;
}

Outcome criterion2() {
  Outcome o{true, "", 60.0};
  const tv::PlanarGridScene scene = tv::gen_planar_grid(100, 100);
  // Independent count: every bisector segment against every line segment.
  std::int64_t brute = 0;
  for (const tv::Segment2& b : scene.bisectors()) {
    for (const tv::Segment2& l : scene.lines()) brute += tv::segments_intersect(b, l) ? 1 : 0;
  }
  const tv::MeshedPlanarGrid mesh = tv::mesh_planar_grid(scene);
  const tv::GeodesicGraph graph(mesh.terrain, 6);
  const tv::DistanceField field = tv::voronoi_labeling(graph, scene.sites);
  const std::int64_t meshed = tv::count_chord_edge_crossings(field, graph, mesh.map_edges);
  const std::int64_t all_edges = tv::count_chord_edge_crossings(field, graph);
  const tv::EulerAudit euler = tv::euler_audit(field, graph);
  g_euler[2] = {1, euler.holds ? 0 : 1};
  const double rel = std::abs(static_cast<double>(meshed) - 9900.0) / 9900.0;
  o.pass = scene.overlay_crossings == 9900 && brute == 9900 && rel <= 0.02;
  o.detail = fmt("analytic %lld, brute force %lld, meshed k=6 on the line edges %lld (%.2f%%), all edges %lld",
                 static_cast<long long>(scene.overlay_crossings), static_cast<long long>(brute),
                 static_cast<long long>(meshed), 100.0 * rel, static_cast<long long>(all_edges));
  return o;
}

std::string scaling_csv(const tv::ScalingResult& r) {
  std::string s = "kind,n,m,trials,mean_complexity,std_err,seed\n";
  for (const tv::ScalingRow& row : r.rows) {
    s += tv::to_string(row.kind) + "," + std::to_string(row.n) + "," + std::to_string(row.m) + "," +
         std::to_string(row.trials) + "," + num(row.mean_complexity) + "," + num(row.std_err) + "," +
         std::to_string(row.seed) + "\n";
  }
  return s;
}

tv::ScalingResult run_lower_bound(tv::ExperimentKind kind) {
  tv::ScalingConfig config;
  config.kind = kind;
  for (int m : {1 << 8, 1 << 10, 1 << 12, 1 << 14}) config.sizes.emplace_back(32, m);
  config.trials = 100;
  config.seed = kSeed;
  return tv::scaling_experiment(config);
}

Outcome criterion3() {
  Outcome o{true, "", 600.0};
  const tv::ScalingResult farming = run_lower_bound(tv::ExperimentKind::Farming);
  const tv::ScalingResult industrial = run_lower_bound(tv::ExperimentKind::Industrial);
  g_csv[3] = scaling_csv(farming) + scaling_csv(industrial);
  const double fs = farming.fit.slope, is = industrial.fit.slope;
  o.pass = fs >= 0.40 && fs <= 0.60 && is >= 0.55 && is <= 0.80;
  o.detail = fmt("farming slope %.4f +- %.4f in [0.40, 0.60]; industrial slope %.4f +- %.4f in [0.55, 0.80]", fs,
                 farming.fit.std_err, is, industrial.fit.std_err);
  return o;
}

Outcome criterion4() {
  Outcome o{true, "", 300.0};
  const tv::SurvivalResult r = tv::survival_experiment(32, 4096, 100, kSeed);
  g_csv[4] = fmt("occupied,alive,discarded\n%lld,%lld,%lld\n", static_cast<long long>(r.occupied),
                 static_cast<long long>(r.alive), static_cast<long long>(r.discarded));
  const double bound = std::numbers::pi / (8.0 * std::exp(2.0) * 16.0);
  o.pass = r.occupied >= 10000 && r.frequency >= bound - 3.0 * r.sigma;
  o.detail = fmt("%lld occupied-farm observations, alive frequency %.5f (sigma %.5f) vs bound %.5f",
                 static_cast<long long>(r.occupied), r.frequency, r.sigma, bound);
  return o;
}

Outcome criterion5() {
  Outcome o{true, "", 60.0};
  const int m = 256;
  std::vector<double> r = tv::entrance_distance_samples(32, m, 10000, kSeed);
  std::string csv = "trial,r\n";
  for (std::size_t t = 0; t < r.size(); ++t) csv += std::to_string(t) + "," + num(r[t]) + "\n";
  g_csv[5] = csv;
  const double hi = 1.0 / std::sqrt(static_cast<double>(m));
  const double dev = tv::sup_cdf_deviation(r, hi, [&](double s) { return tv::kernels::entrance_cdf_bound(m, s); });
  const double dev_exact =
      tv::sup_cdf_deviation(r, hi, [&](double s) { return tv::kernels::entrance_cdf_exact(m, s); });
  // The stated law is the union bound; the empirical CDF must sit below it.
  double worst_excess = 0.0;
  std::vector<double> sorted = r;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size() && sorted[i] <= hi; ++i) {
    const double empirical = static_cast<double>(i + 1) / sorted.size();
    worst_excess = std::max(worst_excess, empirical - tv::kernels::entrance_cdf_bound(m, sorted[i]));
  }
  o.pass = dev <= 0.02;
  o.detail = fmt("sup |F_emp - m s^2 pi/4| = %.4f (limit 0.02); vs 1-(1-pi s^2/4)^m: %.4f; "
                 "largest excess over m s^2 pi/4: %.4f",
                 dev, dev_exact, worst_excess);
  return o;
}

Outcome criterion6() {
  Outcome o{true, "", 900.0};
  tv::ScalingConfig config;
  config.kind = tv::ExperimentKind::Realistic;
  config.sizes = {{1000, 1000}, {4000, 4000}};
  config.trials = 20;
  config.seed = kSeed;
  config.refinement = 3;
  config.max_slope = 2.0;
  const tv::ScalingResult r = tv::scaling_experiment(config);
  g_csv[6] = scaling_csv(r);
  g_euler[6] = {r.euler_checks, r.euler_violations};
  const double small = r.rows[0].mean_complexity / (1000 + 1000);
  const double large = r.rows[1].mean_complexity / (4000 + 4000);
  const double ratio = std::max(small, large) / std::min(small, large);
  const double xi = std::max(r.max_measured_slope[0], r.max_measured_slope[1]);
  o.pass = ratio < 2.0 && xi <= 2.0 * (1.0 + 1e-12);
  o.detail = fmt("complexity/(n+m): %.4f at 1000, %.4f at 4000, ratio %.4f (< 2); max measured slope %.6f", small,
                 large, ratio, xi);
  return o;
}

Outcome criterion7() {
  Outcome o{true, "", 300.0};
  tv::GridConfig config;
  config.m = 1024;
  config.trials = 100;
  config.seed = kSeed;
  const tv::GridResult r = tv::grid_experiment(config);
  std::string csv = "trial,cell_x,cell_y,contributors\n";
  for (std::size_t t = 0; t < r.trials.size(); ++t) {
    for (const tv::GridCellStats& c : r.trials[t].cells) {
      csv += std::to_string(t) + "," + std::to_string(c.cell_x) + "," + std::to_string(c.cell_y) + "," +
             std::to_string(c.contributor_count) + "\n";
    }
  }
  g_csv[7] = csv;
  g_euler[7] = {static_cast<std::int64_t>(r.trials.size()), r.euler_violations};
  const double series = tv::annulus_series();
  o.pass = r.mean_contributors <= 8.0 && std::abs(series - 33.26) <= 0.01;
  o.detail = fmt("mean contributors per cell %.4f (<= 8), max %d; annulus series %.4f (33.26 +- 0.01)",
                 r.mean_contributors, r.max_contributors, series);
  return o;
}

Outcome criterion8() {
  Outcome o{true, "", 120.0};
  int total = 0, held = 0;
  double worst_upper = 0.0, worst_lower = 10.0;
  std::string csv = "terrain,pair,euclid,geodesic\n";
  for (int t = 0; t < 20; ++t) {
    tv::Rng rng(kSeed, 1000 + t);
    const tv::Terrain terrain = tv::random_delaunay_terrain(200, 2.0, rng);
    const double beta = tv::slope_bound(terrain).beta;
    const tv::GeodesicGraph graph(terrain, 4);
    for (int k = 0; k < 100; ++k) {
      const tv::Point2 p = rng.unit_square();
      const tv::Point2 q = rng.unit_square();
      const tv::SandwichWitness w = tv::check_distance_sandwich(graph, p, q, beta, 0.05);
      ++total;
      held += w.holds ? 1 : 0;
      worst_upper = std::max(worst_upper, w.upper_ratio);
      worst_lower = std::min(worst_lower, w.lower_ratio);
      csv += std::to_string(t) + "," + std::to_string(k) + "," + num(w.euclid) + "," + num(w.geodesic) + "\n";
    }
  }
  g_csv[8] = csv;
  o.pass = held == total;
  o.detail = fmt("%d of %d pairs hold; min geodesic/euclid %.6f, max geodesic/(1.05 beta euclid) %.6f", held, total,
                 worst_lower, worst_upper);
  return o;
}

Outcome criterion9() {
  Outcome o{true, "", 0.0};
  std::int64_t runs = 0, violations = 0;
  for (const auto& [c, tally] : g_euler) {
    runs += tally.runs;
    violations += tally.violations;
  }
  o.pass = runs > 0 && violations == 0;
  o.detail = fmt("%lld Voronoi runs from criteria 2, 6, 7; %lld over 2m-2", static_cast<long long>(runs),
                 static_cast<long long>(violations));
  return o;
}

Outcome criterion10() {
  Outcome o{true, "", 600.0};
  const int m = 1024;
  const int js[] = {6};
  const tv::TailCheck tail = tv::diameter_tail_check(m, 10000, js, kSeed).front();
  const bool a = tail.empirical <= 0.05;

  const std::vector<tv::BandFrequency> bands = tv::second_nn_check(m, 10000, kSeed + 1, 4, 8);
  bool b = true;
  std::string band_text;
  for (const tv::BandFrequency& f : bands) {
    const double sigma = std::sqrt(f.bound * (1.0 - f.bound) / 10000.0);
    b = b && f.empirical <= f.bound + 3.0 * sigma;
    band_text += fmt(" i=%d:%.4f/%.4f", f.i, f.empirical, f.bound);
  }

  int contained = 0;
  for (int t = 0; t < 1000; ++t) {
    tv::Rng rng(kSeed + 2, t);
    std::vector<tv::Point2> sample(m);
    for (tv::Point2& p : sample) p = rng.unit_square();
    contained += tv::inscribed_witness_check(sample, rng.below(m)).contained ? 1 : 0;
  }
  const bool c = contained == 1000;

  std::vector<double> means;
  std::string csv = "m,mean_fatness\n";
  for (int mm : {256, 1024, 4096}) {
    const std::vector<tv::FatnessTrial> rows = tv::fatness_experiment(mm, 2000, kSeed + 3);
    double sum = 0.0;
    for (const tv::FatnessTrial& r : rows) sum += r.record.fatness;
    means.push_back(sum / rows.size());
    csv += std::to_string(mm) + "," + num(means.back()) + "\n";
  }
  const double spread = *std::max_element(means.begin(), means.end()) / *std::min_element(means.begin(), means.end());
  const bool d = spread < 1.5;
  csv += "tail_empirical," + num(tail.empirical) + "\n";
  for (const tv::BandFrequency& f : bands) csv += "band_" + std::to_string(f.i) + "," + num(f.empirical) + "\n";
  g_csv[10] = csv;

  o.pass = a && b && c && d;
  o.detail = fmt("(a) P[diam > R_6] = %.4f <= 0.05 (bound %.4f) %s; (b)%s %s; (c) %d/1000 contained %s; "
                 "(d) mean fatness %.4f %.4f %.4f, spread %.4f %s",
                 tail.empirical, tail.bound, a ? "ok" : "FAIL", band_text.c_str(), b ? "ok" : "FAIL", contained,
                 c ? "ok" : "FAIL", means[0], means[1], means[2], spread, d ? "ok" : "FAIL");
  return o;
}

// ---------------------------------------------------------------------------

using Criterion = std::function<Outcome()>;

const std::map<int, Criterion>& criteria();

Outcome criterion11() {
  Outcome o{true, "", 0.0};
  // Re-run every stochastic criterion with its seed and compare renderings.
  const std::map<int, std::string> first = g_csv;
  std::string compared;
  bool same = true;
  for (const auto& [id, csv] : first) {
    criteria().at(id)();
    const bool eq = g_csv.at(id) == csv;
    same = same && eq;
    compared += fmt(" %d:%s", id, eq ? "same" : "DIFFERENT");
  }
  // And the CLI end to end.
  auto cli_run = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = tv::cli::run(args, out, err);
    return std::to_string(rc) + "\n" + out.str();
  };
  const std::vector<std::vector<std::string>> commands = {
      {"experiment", "scaling", "--kind", "industrial", "--n", "32", "--m", "256,1024,4096", "--trials", "50",
       "--seed", "7"},
      {"experiment", "grid", "--m", "64", "--trials", "4", "--mesh-cells", "16", "--seed", "7"},
      {"experiment", "fatness", "--m", "256", "--trials", "50", "--seed", "7"},
      {"experiment", "tails", "--m", "256", "--trials", "200", "--seed", "7"},
  };
  bool cli_same = true;
  for (const auto& args : commands) {
    const std::string a = cli_run(args);
    const std::string b = cli_run(args);
    cli_same = cli_same && a == b && a.rfind("0\n", 0) == 0;
  }
  o.pass = !first.empty() && same && cli_same;
  o.detail = fmt("criteria%s; CLI scaling/grid/fatness/tails %s", compared.c_str(),
                 cli_same ? "byte-identical" : "DIFFERENT");
  return o;
}

const std::map<int, Criterion>& criteria() {
  static const std::map<int, Criterion> table = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},   {5, criterion5},   {6, criterion6},
      {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11},
  };
  return table;
}

// Criteria whose checks are built from the outputs of others.
const std::map<int, std::vector<int>> kInputs = {
    {9, {2, 6, 7}},
    {11, {3, 4, 5, 6, 7, 8, 10}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty()) {
    for (const auto& [id, fn] : criteria()) wanted.push_back(id);
  }

  std::map<int, Outcome> done;
  auto run_one = [&](int id) -> const Outcome& {
    if (auto it = done.find(id); it != done.end()) return it->second;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria().at(id)();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    o.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return done.emplace(id, o).first->second;
  };

  int failures = 0;
  for (int id : wanted) {
    if (!criteria().count(id)) {
      std::printf("criterion %d: unknown\n", id);
      ++failures;
      continue;
    }
    if (auto deps = kInputs.find(id); deps != kInputs.end()) {
      for (int dep : deps->second) run_one(dep);
    }
    const Outcome& o = run_one(id);
    const bool in_time = o.budget_s <= 0.0 || o.elapsed_s <= o.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("criterion %d: %s  %s  [%.1fs%s]\n", id, pass ? "PASS" : "FAIL", o.detail.c_str(), o.elapsed_s,
                in_time ? "" : fmt(", over the %.0fs budget", o.budget_s).c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
