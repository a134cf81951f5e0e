// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/geodesic.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "terravor/error.hpp"

namespace terravor {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct QueueItem {
  double d;
  Index node;
  Index site;

  bool operator>(const QueueItem& o) const {
    if (d != o.d) return d > o.d;
    if (node != o.node) return node > o.node;
    return site > o.site;
  }
};

using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

Index locate_or_throw(const Terrain& terrain, Point2 p) {
  const auto t = terrain.locate(p);
  if (!t) {
    throw Error(ErrorCode::OutsideDomain,
                "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside the domain");
  }
  return *t;
}

bool share_triangle(const Terrain& terrain, Index tp, Point2 p, Index tq, Point2 q) {
  return tp == tq || terrain.triangle_contains(tp, q) || terrain.triangle_contains(tq, p);
}

}  // namespace

GeodesicGraph::GeodesicGraph(const Terrain& terrain, int refinement_k) : terrain_(&terrain), k_(refinement_k) {
  if (k_ < 0) throw Error(ErrorCode::InvalidInput, "refinement must be non-negative");
  const int s = k_ + 1;
  lattice_size_ = static_cast<std::size_t>(s + 1) * (s + 2) / 2;
  const auto nv = static_cast<Index>(terrain.vertex_count());
  const auto ne = static_cast<Index>(terrain.edge_count());
  const auto nt = static_cast<Index>(terrain.triangle_count());
  const Index interior = k_ * (k_ - 1) / 2;

  nodes_.reserve(static_cast<std::size_t>(nv) + static_cast<std::size_t>(ne) * k_ +
                 static_cast<std::size_t>(nt) * interior);
  for (Index v = 0; v < nv; ++v) nodes_.push_back(terrain.lifted_vertex(v));
  for (const Edge& e : terrain.edges()) {
    const Point3 a = terrain.lifted_vertex(e.a), b = terrain.lifted_vertex(e.b);
    for (int q = 1; q <= k_; ++q) {
      const double t = static_cast<double>(q) / s;
      nodes_.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)});
    }
  }

  const Index edge_base = nv;
  auto edge_point = [&](Index from, Index to, int q) -> Index {
    // q-th of s steps from `from` towards `to`.
    if (q == 0) return from;
    if (q == s) return to;
    const Index e = *terrain.find_edge(from, to);
    const int qq = from < to ? q : s - q;
    return edge_base + e * k_ + (qq - 1);
  };

  tri_nodes_.resize(static_cast<std::size_t>(nt) * lattice_size_);
  for (Index t = 0; t < nt; ++t) {
    const Triangle& tri = terrain.triangles()[t];
    const Point3 A = terrain.lifted_vertex(tri[0]);
    const Point3 B = terrain.lifted_vertex(tri[1]);
    const Point3 C = terrain.lifted_vertex(tri[2]);
    Index* out = tri_nodes_.data() + static_cast<std::size_t>(t) * lattice_size_;
    for (int j = 0; j <= s; ++j) {
      for (int i = 0; i + j <= s; ++i) {
        Index id = 0;
        if (j == 0) {
          id = edge_point(tri[0], tri[1], i);
        } else if (i == 0) {
          id = edge_point(tri[0], tri[2], j);
        } else if (i + j == s) {
          id = edge_point(tri[1], tri[2], j);
        } else {
          const double wb = static_cast<double>(i) / s, wc = static_cast<double>(j) / s;
          const double wa = 1.0 - wb - wc;
          id = static_cast<Index>(nodes_.size());
          nodes_.push_back({wa * A.x + wb * B.x + wc * C.x, wa * A.y + wb * B.y + wc * C.y,
                            wa * A.z + wb * B.z + wc * C.z});
        }
        out[local_index(i, j)] = id;
      }
    }
  }

  node_tri_start_.assign(nodes_.size() + 1, 0);
  for (Index id : tri_nodes_) ++node_tri_start_[id + 1];
  for (std::size_t v = 0; v < nodes_.size(); ++v) node_tri_start_[v + 1] += node_tri_start_[v];
  node_tris_.resize(node_tri_start_.back());
  std::vector<std::uint32_t> fill(node_tri_start_.begin(), node_tri_start_.end() - 1);
  for (Index t = 0; t < nt; ++t) {
    for (Index id : lattice(t)) node_tris_[fill[id]++] = t;
  }

  for (int j = 0; j < s; ++j) {
    for (int i = 0; i + j < s; ++i) {
      sub_triangles_.push_back({local_index(i, j), local_index(i + 1, j), local_index(i, j + 1)});
      if (i + j + 2 <= s) {
        sub_triangles_.push_back({local_index(i + 1, j), local_index(i + 1, j + 1), local_index(i, j + 1)});
      }
    }
  }
}

int GeodesicGraph::local_index(int i, int j) const {
  const int s = k_ + 1;
  return j * (s + 1) - j * (j - 1) / 2 + i;
}

std::vector<Index> GeodesicGraph::edge_nodes(Index e) const {
  const Edge& edge = terrain_->edges()[e];
  std::vector<Index> out;
  out.reserve(k_ + 2);
  out.push_back(edge.a);
  const Index base = static_cast<Index>(terrain_->vertex_count()) + e * k_;
  for (int q = 0; q < k_; ++q) out.push_back(base + q);
  out.push_back(edge.b);
  return out;
}

std::vector<std::pair<Index, Index>> GeodesicGraph::arcs() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index t = 0; t < static_cast<Index>(terrain_->triangle_count()); ++t) {
    const auto lat = lattice(t);
    for (std::size_t a = 0; a < lat.size(); ++a) {
      for (std::size_t b = a + 1; b < lat.size(); ++b) {
        out.emplace_back(std::min(lat[a], lat[b]), std::max(lat[a], lat[b]));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool GeodesicGraph::connected() const {
  if (nodes_.empty()) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<char> tri_seen(terrain_->triangle_count(), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index t : incident_triangles(v)) {
      if (tri_seen[t]) continue;
      tri_seen[t] = 1;
      for (Index w : lattice(t)) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
  }
  return count == nodes_.size();
}

double geodesic_distance(const GeodesicGraph& graph, Point2 p, Point2 q) {
  const Terrain& terrain = graph.terrain();
  const Index tp = locate_or_throw(terrain, p);
  const Index tq = locate_or_throw(terrain, q);
  const Point3 P{p.x, p.y, terrain.height_in(tp, p)};
  const Point3 Q{q.x, q.y, terrain.height_in(tq, q)};
  if (p == q) return 0.0;

  double best = share_triangle(terrain, tp, p, tq, q) ? dist3(P, Q) : kInf;

  std::vector<double> dist(graph.node_count(), kInf);
  std::vector<double> exit_cost(graph.node_count(), kInf);
  for (Index v : graph.lattice(tq)) exit_cost[v] = dist3(graph.node(v), Q);

  MinQueue queue;
  for (Index v : graph.lattice(tp)) {
    const double d = dist3(P, graph.node(v));
    if (d < dist[v]) {
      dist[v] = d;
      queue.push({d, v, 0});
    }
  }
  while (!queue.empty()) {
    const QueueItem top = queue.top();
    queue.pop();
    if (top.d != dist[top.node]) continue;
    if (top.d >= best) break;
    const Index u = top.node;
    if (exit_cost[u] < kInf) best = std::min(best, top.d + exit_cost[u]);
    const Point3& pu = graph.node(u);
    for (Index t : graph.incident_triangles(u)) {
      for (Index v : graph.lattice(t)) {
        const double nd = top.d + dist3(pu, graph.node(v));
        if (nd < dist[v]) {
          dist[v] = nd;
          queue.push({nd, v, 0});
        }
      }
    }
  }
  return best;
}

DistanceField multi_source_field(const GeodesicGraph& graph, std::span<const Point2> sites) {
  if (sites.empty()) throw Error(ErrorCode::NoSites, "at least one site is required");
  const Terrain& terrain = graph.terrain();
  DistanceField field;
  field.sites.assign(sites.begin(), sites.end());
  field.distance.assign(graph.node_count(), kInf);
  field.label.assign(graph.node_count(), -1);

  auto better = [&](double d, Index site, Index v) {
    return d < field.distance[v] || (d == field.distance[v] && site < field.label[v]);
  };

  MinQueue queue;
  for (Index s = 0; s < static_cast<Index>(sites.size()); ++s) {
    const Index t = locate_or_throw(terrain, sites[s]);
    const Point3 S{sites[s].x, sites[s].y, terrain.height_in(t, sites[s])};
    for (Index v : graph.lattice(t)) {
      const double d = dist3(S, graph.node(v));
      if (better(d, s, v)) {
        field.distance[v] = d;
        field.label[v] = s;
        queue.push({d, v, s});
      }
    }
  }
  while (!queue.empty()) {
    const QueueItem top = queue.top();
    queue.pop();
    const Index u = top.node;
    if (top.d != field.distance[u] || top.site != field.label[u]) continue;
    const Point3& pu = graph.node(u);
    for (Index t : graph.incident_triangles(u)) {
      for (Index v : graph.lattice(t)) {
        if (v == u) continue;
        const double nd = top.d + dist3(pu, graph.node(v));
        if (better(nd, top.site, v)) {
          field.distance[v] = nd;
          field.label[v] = top.site;
          queue.push({nd, v, top.site});
        }
      }
    }
  }
  return field;
}

double field_distance_at(const GeodesicGraph& graph, const DistanceField& field, Point2 p) {
  const Terrain& terrain = graph.terrain();
  const Index tp = locate_or_throw(terrain, p);
  const Point3 P{p.x, p.y, terrain.height_in(tp, p)};
  double best = kInf;
  for (Index v : graph.lattice(tp)) {
    if (field.label[v] >= 0) best = std::min(best, field.distance[v] + dist3(graph.node(v), P));
  }
  for (const Point2& s : field.sites) {
    const auto ts = terrain.locate(s);
    if (ts && share_triangle(terrain, tp, p, *ts, s)) {
      best = std::min(best, dist3(P, {s.x, s.y, terrain.height_in(*ts, s)}));
    }
  }
  return best;
}

}  // namespace terravor
