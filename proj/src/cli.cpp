// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>

#include "terravor/constructions.hpp"
#include "terravor/delaunay.hpp"
#include "terravor/error.hpp"
#include "terravor/experiments.hpp"
#include "terravor/fatness.hpp"
#include "terravor/input_models.hpp"
#include "terravor/terrain_io.hpp"
#include "terravor/voronoi.hpp"

namespace terravor::cli {
namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json point_json(Point2 p) { return ordered_json::array({p.x, p.y}); }

std::string joined(const std::vector<std::string>& args) {
  std::string s = "terravor";
  for (const std::string& a : args) s += " " + a;
  return s;
}

// Provenance lines shared by every CSV.
std::string csv_header(const std::vector<std::string>& args, std::uint64_t seed) {
  return "# " + joined(args) + "\n# seed=" + std::to_string(seed) + "\n";
}

class Output {
 public:
  Output(std::ostream& fallback, const std::string& path) : fallback_(fallback), path_(path) {}

  void write(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + path_ + "'");
    f << text;
  }

 private:
  std::ostream& fallback_;
  std::string path_;
};

std::vector<Point2> read_sites_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open sites file '" + path + "'");
  std::vector<Point2> sites;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.compare(first, 3, "x,y") == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    Point2 p;
    if (!(row >> p.x >> p.y)) {
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": expected 'x,y'");
    }
    sites.push_back(p);
  }
  return sites;
}

void require_seed(const std::optional<std::uint64_t>& seed, const std::string& command) {
  if (!seed) throw Error(ErrorCode::InvalidInput, "--seed is required for " + command);
}

std::vector<std::pair<int, int>> size_ladder(const std::vector<int>& ns, const std::vector<int>& ms) {
  std::vector<std::pair<int, int>> out;
  if (ns.size() == 1) {
    for (int m : ms) out.emplace_back(ns.front(), m);
  } else if (ns.size() == ms.size()) {
    for (std::size_t i = 0; i < ns.size(); ++i) out.emplace_back(ns[i], ms[i]);
  } else {
    throw Error(ErrorCode::InvalidInput, "--n takes one value or one per --m value");
  }
  return out;
}

ordered_json scene_json(const ConstructionScene& scene, std::optional<std::uint64_t> seed) {
  ordered_json j;
  j["kind"] = to_string(scene.kind);
  j["n"] = scene.n;
  j["m"] = scene.m;
  j["c"] = scene.c;
  j["w"] = scene.w;
  if (seed) j["seed"] = *seed;
  j["rows"] = scene.rows;
  j["columns"] = scene.columns;
  j["farm_count"] = scene.farms.size();
  j["ridge_x"] = scene.ridge.x_position;
  j["ridge_rectangle_count"] = scene.ridge.rectangle_count;
  j["ridge_geodesic_width"] = scene.ridge.geodesic_width();
  j["ridge_crossing_cost"] = scene.ridge.crossing_cost;
  ordered_json farms = ordered_json::array();
  for (const Farm& f : scene.farms) {
    ordered_json road = ordered_json::array();
    for (const Point2& p : f.road) road.push_back(point_json(p));
    farms.push_back({{"row", f.row},
                     {"column", f.column},
                     {"origin", point_json(f.origin)},
                     {"side", f.side},
                     {"entrance", point_json(f.entrance)},
                     {"exit", point_json(f.exit)},
                     {"road_length", f.road_length},
                     {"road", road}});
  }
  j["farms"] = farms;
  return j;
}

struct Common {
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");
  app->add_option("--out", c.out, "Output file (default: stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic Voronoi diagrams on realistic terrains", "terravor"};
  app.require_subcommand(1);

  // generate
  Common gen_common;
  std::string gen_kind;
  int gen_n = 0, gen_m = 0;
  double gen_c = 2.0, gen_w = 0.8, gen_slope = 2.0;
  std::string gen_terrain;
  auto* gen = app.add_subcommand("generate", "Build a lower-bound scene or a random realistic terrain");
  add_common(gen, gen_common);
  gen->add_option("--kind", gen_kind, "planar | farming | industrial | realistic")->required();
  gen->add_option("--n", gen_n, "Terrain size")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "Number of sites")->check(CLI::PositiveNumber);
  gen->add_option("--c", gen_c, "Farming spacing constant");
  gen->add_option("--w", gen_w, "Distance from the west wall to the first ridge");
  gen->add_option("--max-slope", gen_slope, "Target maximum slope for realistic terrains");
  gen->add_option("--terrain", gen_terrain, "Write the meshed terrain here");

  // check-model
  Common chk_common;
  std::string chk_terrain;
  int chk_refine = 4, chk_pairs = 100;
  double chk_eps = 0.05;
  std::vector<double> chk_radii{0.05, 0.1, 0.2};
  auto* chk = app.add_subcommand("check-model", "Measure lambda, xi, beta and test the distance facts");
  add_common(chk, chk_common);
  chk->add_option("--terrain", chk_terrain, "Terrain file")->required();
  chk->add_option("--refine", chk_refine, "Steiner points per edge")->check(CLI::NonNegativeNumber);
  chk->add_option("--eps", chk_eps, "Geodesic slack");
  chk->add_option("--pairs", chk_pairs, "Random pairs for the sandwich check")->check(CLI::PositiveNumber);
  chk->add_option("--radii", chk_radii, "Disk radii around (0.5, 0.5)")->delimiter(',');

  // voronoi
  Common vor_common;
  std::string vor_terrain, vor_sites, vor_svg;
  int vor_refine = 4;
  auto* vor = app.add_subcommand("voronoi", "Label a terrain by nearest site and report complexity");
  add_common(vor, vor_common);
  vor->add_option("--terrain", vor_terrain, "Terrain file")->required();
  vor->add_option("--sites", vor_sites, "CSV with x,y rows")->required();
  vor->add_option("--refine", vor_refine, "Steiner points per edge")->check(CLI::NonNegativeNumber);
  vor->add_option("--svg", vor_svg, "Render the labelled cells");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte Carlo experiments");
  exp->require_subcommand(1);

  Common sc_common;
  std::string sc_kind;
  std::vector<int> sc_n, sc_m;
  int sc_trials = 1, sc_refine = 3;
  double sc_c = 2.0, sc_w = 0.8, sc_slope = 2.0;
  bool sc_surface = false;
  auto* sc = exp->add_subcommand("scaling", "Mean complexity over an (n, m) ladder with a log-log fit");
  add_common(sc, sc_common);
  sc->add_option("--kind", sc_kind, "planar | farming | industrial | realistic")->required();
  sc->add_option("--n", sc_n, "Terrain size, one value or one per m")->required()->delimiter(',');
  sc->add_option("--m", sc_m, "Site counts")->required()->delimiter(',');
  sc->add_option("--trials", sc_trials)->check(CLI::PositiveNumber);
  sc->add_option("--refine", sc_refine)->check(CLI::NonNegativeNumber);
  sc->add_option("--c", sc_c);
  sc->add_option("--w", sc_w);
  sc->add_option("--max-slope", sc_slope);
  sc->add_flag("--surface", sc_surface, "Sample sites from the lifted surface");

  Common gr_common;
  int gr_m = 1024, gr_trials = 1, gr_cells = 64, gr_refine = 3;
  auto* gr = exp->add_subcommand("grid", "Distinct labels per 1/sqrt(m) cell on flat terrain");
  add_common(gr, gr_common);
  gr->add_option("--m", gr_m)->check(CLI::PositiveNumber);
  gr->add_option("--trials", gr_trials)->check(CLI::PositiveNumber);
  gr->add_option("--mesh-cells", gr_cells)->check(CLI::PositiveNumber);
  gr->add_option("--refine", gr_refine)->check(CLI::NonNegativeNumber);

  Common fa_common;
  int fa_m = 1024, fa_trials = 1;
  bool fa_all = false;
  auto* fa = exp->add_subcommand("fatness", "Fatness of random torus Voronoi cells");
  add_common(fa, fa_common);
  fa->add_option("--m", fa_m)->check(CLI::Range(2, 1 << 30));
  fa->add_option("--trials", fa_trials)->check(CLI::PositiveNumber);
  fa->add_flag("--all-cells", fa_all, "Measure every cell, not only the first site's");

  Common ta_common;
  int ta_m = 1024, ta_trials = 1;
  std::vector<int> ta_j{4, 5, 6, 7, 8, 9, 10};
  auto* ta = exp->add_subcommand("tails", "Cell-diameter tail against 6 e^{1-j}");
  add_common(ta, ta_common);
  ta->add_option("--m", ta_m)->check(CLI::Range(2, 1 << 30));
  ta->add_option("--trials", ta_trials)->check(CLI::PositiveNumber);
  ta->add_option("--j", ta_j)->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (gen->parsed()) {
      Output sink(out, gen_common.out);
      if (gen_kind == "realistic") {
        require_seed(gen_common.seed, "generate --kind realistic");
        if (gen_terrain.empty()) throw Error(ErrorCode::InvalidInput, "--terrain is required for realistic terrains");
        Rng rng(*gen_common.seed);
        const Terrain terrain = random_delaunay_terrain(gen_n, gen_slope, rng);
        write_terrain_file(gen_terrain, terrain);
        const RealismParams p = slope_bound(terrain);
        ordered_json j{{"kind", "realistic"}, {"n", gen_n}, {"seed", *gen_common.seed},
                       {"triangles", terrain.triangle_count()}, {"xi", p.xi}, {"beta", p.beta}};
        sink.write(j.dump(2) + "\n");
        return kExitOk;
      }
      if (gen_m < 1) throw Error(ErrorCode::InvalidInput, "--m is required for construction scenes");
      const SceneKind kind = parse_scene_kind(gen_kind);
      if (kind == SceneKind::PlanarGrid) {
        const PlanarGridScene scene = gen_planar_grid(gen_n, gen_m);
        ordered_json j{{"kind", "planar"}, {"n", scene.n}, {"m", scene.m}};
        if (gen_common.seed) j["seed"] = *gen_common.seed;
        j["overlay_crossings"] = scene.overlay_crossings;
        ordered_json sites = ordered_json::array();
        for (const Point2& p : scene.sites) sites.push_back(point_json(p));
        j["sites"] = sites;
        j["line_x"] = scene.line_x;
        if (!gen_terrain.empty()) {
          const MeshedPlanarGrid mesh = mesh_planar_grid(scene);
          write_terrain_file(gen_terrain, mesh.terrain);
          j["map_edge_count"] = mesh.map_edges.size();
        }
        sink.write(j.dump(2) + "\n");
        return kExitOk;
      }
      SceneOptions options;
      options.c = gen_c;
      options.w = gen_w;
      const ConstructionScene scene =
          kind == SceneKind::Farming ? gen_farming(gen_n, gen_m, options) : gen_industrial(gen_n, gen_m, options);
      sink.write(scene_json(scene, gen_common.seed).dump(2) + "\n");
      return kExitOk;
    }

    if (chk->parsed()) {
      require_seed(chk_common.seed, "check-model");
      const Terrain terrain = read_terrain_file(chk_terrain);
      const GeodesicGraph graph(terrain, chk_refine);
      RealismParams p = slope_bound(terrain);
      const std::vector<Segment2> edges = terrain_segments(terrain);
      p.lambda_est = low_density_estimate(edges);
      Rng rng(*chk_common.seed);
      int passed = 0;
      for (int i = 0; i < chk_pairs; ++i) {
        const Point2 a = rng.unit_square();
        const Point2 b = rng.unit_square();
        if (check_distance_sandwich(graph, a, b, p.beta, chk_eps).holds) ++passed;
      }
      ordered_json disks = ordered_json::array();
      for (double r : chk_radii) {
        const DiskAreaCheck d = geodesic_disk_area(graph, {0.5, 0.5}, r);
        disks.push_back({{"radius", r},
                         {"area", d.area},
                         {"lower_bound", d.lower_bound},
                         {"upper_bound", d.upper_bound},
                         {"lower_ok", d.lower_ok},
                         {"upper_ok", d.upper_ok}});
      }
      ordered_json j{{"lambda_est", p.lambda_est},
                     {"xi", p.xi},
                     {"beta", p.beta},
                     {"seed", *chk_common.seed},
                     {"refinement", chk_refine},
                     {"eps", chk_eps},
                     {"sandwich_pairs", chk_pairs},
                     {"sandwich_pass_rate", static_cast<double>(passed) / chk_pairs},
                     {"disk_area_checks", disks}};
      Output(out, chk_common.out).write(j.dump(2) + "\n");
      return kExitOk;
    }

    if (vor->parsed()) {
      const Terrain terrain = read_terrain_file(vor_terrain);
      const std::vector<Point2> sites = read_sites_csv(vor_sites);
      const GeodesicGraph graph(terrain, vor_refine);
      const DistanceField field = voronoi_labeling(graph, sites);
      const VoronoiComplexityReport report = complexity_report(field, graph);
      const EulerAudit euler = euler_audit(field, graph);
      const ConnectivityAudit conn = cell_connectivity_audit(field, graph);
      ordered_json j{{"m", report.m},
                     {"n", report.n},
                     {"refinement", vor_refine},
                     {"voronoi_vertex_count", report.voronoi_vertex_count},
                     {"chord_edge_crossings", report.chord_edge_crossings},
                     {"breakpoint_bound", report.breakpoint_bound},
                     {"complexity", report.total()},
                     {"euler_bound", euler.bound},
                     {"euler_holds", euler.holds},
                     {"max_cell_contributors", euler.max_cell_contributors},
                     {"mean_cell_contributors", euler.mean_cell_contributors},
                     {"disconnected_cells", conn.disconnected_labels},
                     {"extra_cell_components", conn.extra_components},
                     {"empty_cells", conn.empty_labels}};
      Output(out, vor_common.out).write(j.dump(2) + "\n");
      if (!vor_svg.empty()) {
        std::ofstream svg(vor_svg);
        if (!svg) throw Error(ErrorCode::InvalidInput, "cannot write '" + vor_svg + "'");
        write_svg(svg, field, graph);
      }
      return kExitOk;
    }

    if (sc->parsed()) {
      require_seed(sc_common.seed, "experiment scaling");
      ScalingConfig config;
      config.kind = parse_experiment_kind(sc_kind);
      config.sizes = size_ladder(sc_n, sc_m);
      config.trials = sc_trials;
      config.seed = *sc_common.seed;
      config.scene.c = sc_c;
      config.scene.w = sc_w;
      config.refinement = sc_refine;
      config.max_slope = sc_slope;
      config.surface_sampling = sc_surface;
      config.jobs = sc_common.jobs;
      const ScalingResult result = scaling_experiment(config);
      std::string csv = csv_header(args, config.seed) + "kind,n,m,trials,mean_complexity,std_err,seed\n";
      for (const ScalingRow& r : result.rows) {
        csv += to_string(r.kind) + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
               std::to_string(r.trials) + "," + num(r.mean_complexity) + "," + num(r.std_err) + "," +
               std::to_string(r.seed) + "\n";
      }
      Output(out, sc_common.out).write(csv);
      if (result.fit.points >= 2) {
        err << "slope " << result.fit.slope << " +- " << result.fit.std_err << " over " << result.fit.points
            << " points\n";
        if (!result.fit.enough_points) err << "warning: fewer than 4 ladder points\n";
      }
      if (result.euler_checks > 0) {
        err << "euler violations " << result.euler_violations << " of " << result.euler_checks << "\n";
      }
      if (result.discarded > 0) err << "discarded sample points " << result.discarded << "\n";
      return kExitOk;
    }

    if (gr->parsed()) {
      require_seed(gr_common.seed, "experiment grid");
      GridConfig config{gr_m, gr_trials, *gr_common.seed, gr_cells, gr_refine, gr_common.jobs};
      const GridResult result = grid_experiment(config);
      std::string csv = csv_header(args, config.seed) + "trial,cell_x,cell_y,contributors\n";
      for (std::size_t t = 0; t < result.trials.size(); ++t) {
        for (const GridCellStats& c : result.trials[t].cells) {
          csv += std::to_string(t) + "," + std::to_string(c.cell_x) + "," + std::to_string(c.cell_y) + "," +
                 std::to_string(c.contributor_count) + "\n";
        }
      }
      Output(out, gr_common.out).write(csv);
      err << "mean contributors " << result.mean_contributors << ", max " << result.max_contributors
          << ", euler violations " << result.euler_violations << "\n";
      return kExitOk;
    }

    if (fa->parsed()) {
      require_seed(fa_common.seed, "experiment fatness");
      const std::vector<FatnessTrial> rows = fatness_experiment(fa_m, fa_trials, *fa_common.seed, fa_all, fa_common.jobs);
      std::string csv = csv_header(args, *fa_common.seed) + "trial,m,diameter,R,r,fatness\n";
      double sum = 0.0;
      for (const FatnessTrial& t : rows) {
        csv += std::to_string(t.trial) + "," + std::to_string(t.m) + "," + num(t.record.diameter) + "," +
               num(t.record.R) + "," + num(t.record.r) + "," + num(t.record.fatness) + "\n";
        sum += t.record.fatness;
      }
      Output(out, fa_common.out).write(csv);
      err << "mean fatness " << sum / static_cast<double>(rows.size()) << "\n";
      return kExitOk;
    }

    if (ta->parsed()) {
      require_seed(ta_common.seed, "experiment tails");
      const std::vector<TailCheck> rows = diameter_tail_check(ta_m, ta_trials, ta_j, *ta_common.seed, ta_common.jobs);
      std::string csv = csv_header(args, *ta_common.seed) + "j,R_j,bound,empirical\n";
      for (const TailCheck& c : rows) {
        csv += std::to_string(c.j) + "," + num(c.radius) + "," + num(c.bound) + "," + num(c.empirical) + "\n";
      }
      Output(out, ta_common.out).write(csv);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << app.help();
  return kExitValidation;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace terravor::cli
