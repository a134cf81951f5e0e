// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/voronoi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

namespace terravor {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Calls body(a, b, c) with the global node ids of every lattice sub-triangle.
template <class Body>
void for_each_subtriangle(const GeodesicGraph& graph, Body&& body) {
  const auto nt = static_cast<Index>(graph.terrain().triangle_count());
  const auto& subs = graph.local_subtriangles();
  for (Index t = 0; t < nt; ++t) {
    const auto lattice = graph.lattice(t);
    for (const auto& s : subs) body(lattice[s[0]], lattice[s[1]], lattice[s[2]]);
  }
}

int grid_cell(double v, int g) { return std::clamp(static_cast<int>(v * g), 0, g - 1); }

}  // namespace

DistanceField voronoi_labeling(const GeodesicGraph& graph, std::span<const Point2> sites) {
  return multi_source_field(graph, sites);
}

std::int64_t count_voronoi_vertices(const DistanceField& field, const GeodesicGraph& graph) {
  struct Witness {
    std::array<Index, 3> labels;
    std::array<Index, 3> nodes;
  };
  std::vector<Witness> witnesses;
  for_each_subtriangle(graph, [&](Index a, Index b, Index c) {
    std::array<Index, 3> l{field.label[a], field.label[b], field.label[c]};
    if (l[0] < 0 || l[1] < 0 || l[2] < 0 || l[0] == l[1] || l[1] == l[2] || l[0] == l[2]) return;
    std::sort(l.begin(), l.end());
    witnesses.push_back({l, {a, b, c}});
  });
  std::sort(witnesses.begin(), witnesses.end(),
            [](const Witness& x, const Witness& y) { return std::tie(x.labels, x.nodes) < std::tie(y.labels, y.nodes); });

  std::int64_t count = 0;
  for (std::size_t lo = 0; lo < witnesses.size();) {
    std::size_t hi = lo;
    while (hi < witnesses.size() && witnesses[hi].labels == witnesses[lo].labels) ++hi;
    // Witnesses of one label triple that share a node form one vertex.
    std::vector<std::pair<Index, std::size_t>> by_node;
    for (std::size_t w = lo; w < hi; ++w) {
      for (Index v : witnesses[w].nodes) by_node.emplace_back(v, w - lo);
    }
    std::sort(by_node.begin(), by_node.end());
    DisjointSets sets(hi - lo);
    std::size_t merges = 0;
    for (std::size_t i = 1; i < by_node.size(); ++i) {
      if (by_node[i].first == by_node[i - 1].first && sets.unite(by_node[i].second, by_node[i - 1].second)) {
        ++merges;
      }
    }
    count += static_cast<std::int64_t>(hi - lo - merges);
    lo = hi;
  }
  return count;
}

std::int64_t count_chord_edge_crossings(const DistanceField& field, const GeodesicGraph& graph,
                                        std::span<const Index> edges) {
  std::int64_t count = 0;
  for (Index e : edges) {
    const std::vector<Index> nodes = graph.edge_nodes(e);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (field.label[nodes[i]] != field.label[nodes[i - 1]]) ++count;
    }
  }
  return count;
}

std::int64_t count_chord_edge_crossings(const DistanceField& field, const GeodesicGraph& graph) {
  std::vector<Index> all(graph.terrain().edge_count());
  std::iota(all.begin(), all.end(), Index{0});
  return count_chord_edge_crossings(field, graph, all);
}

int contributor_grid_size(int m) { return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m))))); }

std::vector<int> labels_per_cell(const DistanceField& field, const GeodesicGraph& graph, int g) {
  std::vector<std::pair<int, Index>> hits;
  hits.reserve(graph.node_count());
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    if (field.label[v] < 0) continue;
    const Point3& p = graph.node(static_cast<Index>(v));
    hits.emplace_back(grid_cell(p.y, g) * g + grid_cell(p.x, g), field.label[v]);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::vector<int> counts(static_cast<std::size_t>(g) * g, 0);
  for (const auto& h : hits) ++counts[h.first];
  return counts;
}

VoronoiComplexityReport complexity_report(const DistanceField& field, const GeodesicGraph& graph) {
  VoronoiComplexityReport r;
  r.m = static_cast<int>(field.sites.size());
  r.n = static_cast<int>(graph.terrain().vertex_count());
  r.voronoi_vertex_count = count_voronoi_vertices(field, graph);
  r.chord_edge_crossings = count_chord_edge_crossings(field, graph);
  r.breakpoint_bound = r.n;
  const std::vector<int> cells = labels_per_cell(field, graph, contributor_grid_size(r.m));
  for (std::size_t c = 0; c < cells.size(); ++c) r.per_cell_contributors[static_cast<int>(c)] = cells[c];
  return r;
}

EulerAudit euler_audit(const DistanceField& field, const GeodesicGraph& graph) {
  EulerAudit a;
  a.m = static_cast<int>(field.sites.size());
  a.vertex_count = count_voronoi_vertices(field, graph);
  if (a.m >= 3) {
    a.bound = 2 * static_cast<std::int64_t>(a.m) - 2;
    a.holds = a.vertex_count <= a.bound;
  } else {
    a.holds = a.vertex_count == 0;
  }
  const std::vector<int> cells = labels_per_cell(field, graph, contributor_grid_size(a.m));
  a.max_cell_contributors = *std::max_element(cells.begin(), cells.end());
  a.mean_cell_contributors =
      static_cast<double>(std::accumulate(cells.begin(), cells.end(), std::int64_t{0})) / cells.size();
  return a;
}

ConnectivityAudit cell_connectivity_audit(const DistanceField& field, const GeodesicGraph& graph) {
  DisjointSets sets(graph.node_count());
  for_each_subtriangle(graph, [&](Index a, Index b, Index c) {
    if (field.label[a] == field.label[b]) sets.unite(a, b);
    if (field.label[b] == field.label[c]) sets.unite(b, c);
    if (field.label[a] == field.label[c]) sets.unite(a, c);
  });
  std::vector<int> components(field.sites.size(), 0);
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    if (field.label[v] >= 0 && sets.find(v) == v) ++components[field.label[v]];
  }
  ConnectivityAudit audit;
  for (int c : components) {
    if (c == 0) ++audit.empty_labels;
    if (c > 1) {
      ++audit.disconnected_labels;
      audit.extra_components += c - 1;
    }
  }
  return audit;
}

std::vector<Segment2> label_boundary(const DistanceField& field, const GeodesicGraph& graph) {
  std::vector<Segment2> out;
  for_each_subtriangle(graph, [&](Index a, Index b, Index c) {
    const Index la = field.label[a], lb = field.label[b], lc = field.label[c];
    if (la == lb && lb == lc) return;
    const Point2 pa = graph.node(a).xy(), pb = graph.node(b).xy(), pc = graph.node(c).xy();
    const Point2 mab = 0.5 * (pa + pb), mbc = 0.5 * (pb + pc), mca = 0.5 * (pc + pa);
    if (la != lb && lb != lc && la != lc) {
      const Point2 g = (1.0 / 3.0) * (pa + pb + pc);
      out.push_back({mab, g});
      out.push_back({mbc, g});
      out.push_back({mca, g});
    } else if (la == lb) {
      out.push_back({mbc, mca});
    } else if (lb == lc) {
      out.push_back({mab, mca});
    } else {
      out.push_back({mab, mbc});
    }
  });
  return out;
}

void write_svg(std::ostream& out, const DistanceField& field, const GeodesicGraph& graph, int size_px) {
  const double s = size_px;
  auto px = [&](Point2 p) { return std::to_string(p.x * s) + "," + std::to_string((1.0 - p.y) * s); };
  auto colour = [](Index label) {
    if (label < 0) return std::string("#000000");
    // Golden-angle hue spacing keeps neighbouring labels distinguishable.
    const double hue = std::fmod(label * 137.50776405, 360.0);
    return "hsl(" + std::to_string(static_cast<int>(hue)) + ",65%,70%)";
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
      << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
  for_each_subtriangle(graph, [&](Index a, Index b, Index c) {
    // Colour by the corner nearest its site so boundaries follow distances.
    Index best = a;
    for (Index v : {b, c}) {
      if (field.distance[v] < field.distance[best]) best = v;
    }
    out << "<polygon points=\"" << px(graph.node(a).xy()) << ' ' << px(graph.node(b).xy()) << ' '
        << px(graph.node(c).xy()) << "\" fill=\"" << colour(field.label[best]) << "\" stroke=\"none\"/>\n";
  });
  const Terrain& terrain = graph.terrain();
  for (const Edge& e : terrain.edges()) {
    const Point2 a = terrain.vertex(e.a), b = terrain.vertex(e.b);
    out << "<line x1=\"" << a.x * s << "\" y1=\"" << (1.0 - a.y) * s << "\" x2=\"" << b.x * s << "\" y2=\""
        << (1.0 - b.y) * s << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
  }
  for (const Point2& p : field.sites) {
    out << "<circle cx=\"" << p.x * s << "\" cy=\"" << (1.0 - p.y) * s << "\" r=\"3\" fill=\"#000000\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace terravor
