#include "cubetool/wallgraph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace cubetool {

bool WallGraph::adjacent(int u, int v) const {
  const auto& n = adjacency[static_cast<std::size_t>(u)];
  return std::binary_search(n.begin(), n.end(), v);
}

std::vector<std::vector<int>> wall_distances(const CubeComplex& x, const WallSet& ws) {
  const std::size_t n = ws.size();
  std::vector<VertexSet> carriers;
  for (const Wall& w : ws.walls()) carriers.push_back(vertices_of(x, w.carrier));
  const auto adj = vertex_adjacency(x);
  std::vector<std::vector<int>> out(n, std::vector<int>(n, -1));
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<int> dist(x.size(), -1);
    std::deque<CubeIndex> queue;
    for (CubeIndex v : carriers[a]) {
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      const CubeIndex v = queue.front();
      queue.pop_front();
      for (const Neighbor& nb : adj[static_cast<std::size_t>(v)])
        if (dist[static_cast<std::size_t>(nb.vertex)] < 0) {
          dist[static_cast<std::size_t>(nb.vertex)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(nb.vertex);
        }
    }
    for (std::size_t b = 0; b < n; ++b)
      for (CubeIndex v : carriers[b]) {
        const int d = dist[static_cast<std::size_t>(v)];
        if (d >= 0 && (out[a][b] < 0 || d < out[a][b])) out[a][b] = d;
      }
  }
  return out;
}

WallGraph wall_graph(const CubeComplex& x, const WallSet& ws, int radius) {
  const auto dist = wall_distances(x, ws);
  WallGraph g;
  g.radius = radius;
  g.adjacency.resize(ws.size());
  for (std::size_t a = 0; a < ws.size(); ++a)
    for (std::size_t b = 0; b < ws.size(); ++b)
      if (a != b && dist[a][b] >= 0 && dist[a][b] <= radius) g.adjacency[a].push_back(static_cast<int>(b));
  for (const auto& n : g.adjacency) {
    g.max_degree = std::max(g.max_degree, static_cast<int>(n.size()));
    g.edge_count += n.size();
  }
  g.edge_count /= 2;
  return g;
}

WallGraph wall_graph(const CubeComplex& x, int radius) { return wall_graph(x, WallSet(x), radius); }

Coloring greedy_color(const WallGraph& g) {
  Coloring c(g.size(), 0);
  for (std::size_t w = 0; w < g.size(); ++w) {
    std::set<int> taken;
    for (int u : g.adjacency[w]) taken.insert(c[static_cast<std::size_t>(u)]);
    int color = 1;
    while (taken.count(color)) ++color;
    c[w] = color;
  }
  return c;
}

bool is_proper(const WallGraph& g, const Coloring& c) {
  if (c.size() != g.size()) return false;
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (c[w] < 1) return false;
    for (int u : g.adjacency[w])
      if (c[static_cast<std::size_t>(u)] == c[w]) return false;
  }
  return true;
}

std::vector<int> graph_ball(const WallGraph& g, int center, int r) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue{center};
  dist[static_cast<std::size_t>(center)] = 0;
  std::vector<int> out;
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    out.push_back(w);
    if (dist[static_cast<std::size_t>(w)] == r) continue;
    for (int u : g.adjacency[static_cast<std::size_t>(w)])
      if (dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(w)] + 1;
        queue.push_back(u);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool class_equal(const Coloring& c, const Coloring& c2, const WallGraph& g, int wall) {
  if (wall < 0 || static_cast<std::size_t>(wall) >= g.size())
    throw Error(ErrorCode::kUnknownWall, "no wall " + std::to_string(wall));
  if (c.size() != g.size() || c2.size() != g.size())
    throw Error(ErrorCode::kMalformedInput, "coloring does not match the wall graph");
  for (int w : graph_ball(g, wall, c[static_cast<std::size_t>(wall)]))
    if (c[static_cast<std::size_t>(w)] != c2[static_cast<std::size_t>(w)]) return false;
  return true;
}

bool class_edge(const Coloring& c, const Coloring& c2, const WallGraph& g, const WallSet& ws, CubeIndex edge) {
  return class_equal(c, c2, g, ws.wall_of_edge(edge));
}

bool class_vertex(const Coloring& c, const Coloring& c2, const WallGraph& g, const CubeComplex& x,
                  const WallSet& ws, CubeIndex v) {
  for (const EdgeEnd& e : x.edge_ends_at(v))
    if (!class_edge(c, c2, g, ws, e.edge)) return false;
  return true;
}

Coloring pullback(const Coloring& c, const std::vector<int>& wall_permutation) {
  if (wall_permutation.size() != c.size())
    throw Error(ErrorCode::kMalformedInput, "permutation does not match the coloring");
  Coloring out(c.size(), 0);
  for (std::size_t w = 0; w < c.size(); ++w) {
    const int image = wall_permutation[w];
    if (image < 0 || static_cast<std::size_t>(image) >= c.size() || out[static_cast<std::size_t>(image)] != 0)
      throw Error(ErrorCode::kMalformedInput, "not a permutation of the walls");
    out[static_cast<std::size_t>(image)] = c[w];
  }
  return out;
}

RegionConditionReport verify_region_conditions(const CubeComplex& x, const WallSet& ws, const WallGraph& g,
                                               const VertexSet& region,
                                               const std::map<CubeIndex, Coloring>& colorings, int j) {
  if (region.empty()) throw Error(ErrorCode::kEmptyRegion, "empty region");
  std::vector<bool> in(x.size(), false);
  for (CubeIndex v : region) {
    in[static_cast<std::size_t>(v)] = true;
    auto it = colorings.find(v);
    if (it == colorings.end()) throw Error(ErrorCode::kMalformedInput, "no coloring at " + x.id(v));
    if (it->second.size() != g.size()) throw Error(ErrorCode::kMalformedInput, "coloring at " + x.id(v) + " has the wrong size");
  }
  RegionConditionReport out;
  std::map<int, CubeIndex> first_edge;
  for (CubeIndex e : x.edges()) {
    const CubeIndex u = x.corner(e, 0), v = x.corner(e, 1);
    const bool iu = in[static_cast<std::size_t>(u)], iv = in[static_cast<std::size_t>(v)];
    if (!iu && !iv) continue;
    const int w = ws.wall_of_edge(e);
    for (CubeIndex end : {u, v}) {
      if (!in[static_cast<std::size_t>(end)]) continue;
      const CubeIndex other = end == u ? v : u;
      const bool stays = colorings.at(end)[static_cast<std::size_t>(w)] > j;
      if (stays != static_cast<bool>(in[static_cast<std::size_t>(other)]))
        throw Error(ErrorCode::kConditionViolated, "edge " + x.id(e) + " violates the region rule at " + x.id(end),
                    {"2", x.id(e)});
    }
    if (iu && iv) {
      ++out.internal_edges;
      if (!class_edge(colorings.at(u), colorings.at(v), g, ws, e))
        throw Error(ErrorCode::kConditionViolated, "colorings at the ends of " + x.id(e) + " are in different classes",
                    {"1", x.id(e)});
      continue;
    }
    ++out.boundary_edges;
    const CubeIndex inside = iu ? u : v;
    const int color = colorings.at(inside)[static_cast<std::size_t>(w)];
    auto [it, fresh] = out.boundary_colors.emplace(w, color);
    if (fresh) {
      first_edge[w] = e;
    } else if (it->second != color) {
      out.boundary_colors_well_defined = false;
      out.color_conflicts.push_back(std::to_string(w) + ":" + x.id(first_edge[w]) + ":" + x.id(e));
    }
  }
  for (CubeIndex v : region) {
    std::vector<CubeIndex> hits;
    for (const EdgeEnd& e : x.edge_ends_at(v)) {
      const CubeIndex other = x.corner(e.edge, 1 - e.end);
      if (!in[static_cast<std::size_t>(other)] &&
          colorings.at(v)[static_cast<std::size_t>(ws.wall_of_edge(e.edge))] == j &&
          std::find(hits.begin(), hits.end(), e.edge) == hits.end())
        hits.push_back(e.edge);
    }
    if (hits.size() >= 2) out.double_incidences.push_back(x.id(v) + ":" + x.id(hits[0]) + ":" + x.id(hits[1]));
  }
  return out;
}

}  // namespace cubetool
