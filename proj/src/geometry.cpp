#include "cubetool/geometry.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace cubetool {

namespace {

CubeIndex other_end(const CubeComplex& x, const EdgeEnd& e) { return x.corner(e.edge, 1 - e.end); }

bool contains(const VertexSet& s, CubeIndex v) { return std::binary_search(s.begin(), s.end(), v); }

std::string join_word(const std::vector<std::string>& w) {
  if (w.empty()) return "o";
  std::string out = w.front();
  for (std::size_t i = 1; i < w.size(); ++i) out += "." + w[i];
  return out;
}

}  // namespace

std::vector<std::vector<Neighbor>> vertex_adjacency(const CubeComplex& x) {
  std::vector<std::vector<Neighbor>> adj(x.size());
  for (CubeIndex v : x.vertices())
    for (const EdgeEnd& e : x.edge_ends_at(v)) adj[static_cast<std::size_t>(v)].push_back({other_end(x, e), e.edge});
  return adj;
}

std::vector<int> distances_from(const CubeComplex& x, CubeIndex v) {
  std::vector<int> d(x.size(), -1);
  d[static_cast<std::size_t>(v)] = 0;
  std::deque<CubeIndex> q{v};
  while (!q.empty()) {
    const CubeIndex u = q.front();
    q.pop_front();
    for (const EdgeEnd& e : x.edge_ends_at(u)) {
      const CubeIndex w = other_end(x, e);
      if (d[static_cast<std::size_t>(w)] < 0) {
        d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(u)] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

int distance(const CubeComplex& x, std::string_view u, std::string_view v) {
  const CubeIndex a = x.vertex_index(u), b = x.vertex_index(v);
  const int d = distances_from(x, a)[static_cast<std::size_t>(b)];
  if (d < 0)
    throw Error(ErrorCode::kDisconnected, std::string(u) + " and " + std::string(v) + " lie in different components");
  return d;
}

// ---- universal cover balls ------------------------------------------------

CoverBall universal_cover_ball(const ComplexPtr& xp, std::string_view v0, int r) {
  const CubeComplex& x = *xp;
  const CubeIndex root = x.vertex_index(v0);
  NpcVerdict npc = is_npc(x);
  if (!npc.npc)
    throw Error(ErrorCode::kNotNpc, "complex is not non-positively curved at " + x.id(npc.vertex));
  if (r < 0) throw Error(ErrorCode::kMalformedInput, "negative radius");

  struct Node {
    CubeIndex base;
    std::vector<std::string> word;
    std::map<EdgeEnd, int> nbr;
    int depth;
  };
  std::vector<Node> nodes{{root, {}, {}, 0}};
  std::vector<int> layer{0};
  for (int n = 0; n < r; ++n) {
    // One candidate per (node, edge-end) leading away from the basepoint.
    std::map<std::pair<int, EdgeEnd>, std::size_t> cand;
    std::vector<std::pair<int, EdgeEnd>> cands;
    for (int u : layer)
      for (const EdgeEnd& e : x.edge_ends_at(nodes[static_cast<std::size_t>(u)].base))
        if (!nodes[static_cast<std::size_t>(u)].nbr.count(e)) {
          cand.emplace(std::pair{u, e}, cands.size());
          cands.push_back({u, e});
        }
    std::vector<std::size_t> parent(cands.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    // Two candidates meet when they close a square over a common predecessor.
    for (int u : layer) {
      const Node& nu = nodes[static_cast<std::size_t>(u)];
      for (const Incidence& inc : x.incidences(nu.base)) {
        if (x.dim(inc.cube) != 2) continue;
        for (int a = 0; a < 2; ++a) {
          const int b = 1 - a;
          const EdgeEnd ea = x.edge_end(inc.cube, inc.corner, a), eb = x.edge_end(inc.cube, inc.corner, b);
          auto down = nu.nbr.find(ea);
          auto up = cand.find({u, eb});
          if (down == nu.nbr.end() || up == cand.end()) continue;
          const int xc = inc.corner ^ (1 << a);
          const Node& nx = nodes[static_cast<std::size_t>(down->second)];
          auto side = nx.nbr.find(x.edge_end(inc.cube, xc, b));
          if (side == nx.nbr.end() || nodes[static_cast<std::size_t>(side->second)].depth != n) continue;
          auto other = cand.find({side->second, x.edge_end(inc.cube, xc ^ (1 << b), a)});
          if (other == cand.end()) continue;
          const std::size_t p = find(up->second), q = find(other->second);
          parent[std::max(p, q)] = std::min(p, q);
        }
      }
    }
    std::map<std::size_t, int> node_of;
    std::vector<int> next;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const std::size_t rt = find(c);
      auto [u, e] = cands[c];
      auto it = node_of.find(rt);
      if (it == node_of.end()) {
        it = node_of.emplace(rt, static_cast<int>(nodes.size())).first;
        nodes.push_back({other_end(x, e), {}, {}, n + 1});
        next.push_back(it->second);
      }
      const int w = it->second;
      Node& nw = nodes[static_cast<std::size_t>(w)];
      const EdgeEnd back{e.edge, 1 - e.end};
      if (nw.base != other_end(x, e) || nw.nbr.count(back))
        throw Error(ErrorCode::kInternal, "inconsistent development of the universal cover");
      nw.nbr[back] = u;
      nodes[static_cast<std::size_t>(u)].nbr[e] = w;
      std::vector<std::string> word = nodes[static_cast<std::size_t>(u)].word;
      word.push_back(x.id(e.edge) + (e.end == 0 ? "+" : "-"));
      if (nw.word.empty() || word < nw.word) nw.word = std::move(word);
    }
    layer = std::move(next);
  }

  // Lift every cube whose corners all lie in the ball, keyed by the lift of
  // its corner 0.
  std::map<std::pair<CubeIndex, int>, std::vector<int>> lifts;
  for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
    for (const Incidence& inc : x.incidences(nodes[ni].base)) {
      const int d = x.dim(inc.cube);
      std::vector<int> corners(static_cast<std::size_t>(1) << d, -1);
      bool inside = true;
      for (int q = 0; q < (1 << d) && inside; ++q) {
        int cur = static_cast<int>(ni), pos = inc.corner;
        for (int i = 0; i < d && inside; ++i) {
          if (((pos ^ q) >> i & 1) == 0) continue;
          const auto& nbr = nodes[static_cast<std::size_t>(cur)].nbr;
          auto it = nbr.find(x.edge_end(inc.cube, pos, i));
          if (it == nbr.end()) {
            inside = false;
          } else {
            cur = it->second;
            pos ^= 1 << i;
          }
        }
        corners[static_cast<std::size_t>(q)] = cur;
      }
      if (inside) lifts.emplace(std::pair{inc.cube, corners[0]}, corners);
    }
  }
  auto node_name = [&](int n) { return join_word(nodes[static_cast<std::size_t>(n)].word); };
  CubeComplexDescription desc;
  desc.name = x.name() + ".ball";
  desc.dim_cap = x.dim_cap();
  for (std::size_t ni = 0; ni < nodes.size(); ++ni)
    desc.cubes.push_back(Cube{x.id(nodes[ni].base) + "@" + node_name(static_cast<int>(ni)), 0, {},
                              {x.id(nodes[ni].base) + "@" + node_name(static_cast<int>(ni))}, {}});
  for (const auto& [key, corners] : lifts) {
    const auto [c, n0] = key;
    const Cube& cb = x.cube(c);
    Cube lifted;
    lifted.id = cb.id + "@" + node_name(n0);
    lifted.dim = cb.dim;
    lifted.orient = cb.orient;
    for (int q : corners) lifted.corners.push_back(x.id(nodes[static_cast<std::size_t>(q)].base) + "@" + node_name(q));
    for (int i = 0; i < cb.dim; ++i)
      for (int s = 0; s < 2; ++s) {
        const CubeIndex f = x.face(c, i, s);
        const int at = corners[static_cast<std::size_t>(x.attach(c, i, s)[0])];
        lifted.faces.push_back(x.id(f) + "@" + node_name(at));
      }
    desc.cubes.push_back(std::move(lifted));
  }
  auto total = std::make_shared<const CubeComplex>(CubeComplex::validate(std::move(desc)));
  std::vector<CubeImage> images(total->size());
  for (std::size_t i = 0; i < total->size(); ++i) {
    const std::string& id = total->id(static_cast<CubeIndex>(i));
    const CubeIndex c = *x.find(id.substr(0, id.rfind('@')));
    images[i].cube = c;
    images[i].corners.resize(static_cast<std::size_t>(1) << x.dim(c));
    std::iota(images[i].corners.begin(), images[i].corners.end(), 0);
  }
  CubicalMap p = CubicalMap::from_images(total, xp, std::move(images));
  const std::string base_id = x.id(root) + "@o";
  std::vector<int> depth = distances_from(*total, total->vertex_index(base_id));
  return CoverBall{xp, total, std::move(p), base_id, r, std::move(depth)};
}

// ---- convexity and neighborhoods --------------------------------------------

VertexSet vertices_of(const CubeComplex& x, const std::vector<CubeIndex>& cells) {
  VertexSet out;
  for (CubeIndex c : cells)
    for (CubeIndex v : x.corners(c)) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subcomplex full_subcomplex(const CubeComplex& x, const VertexSet& vertices) {
  Subcomplex out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& cs = x.corners(static_cast<CubeIndex>(i));
    if (std::all_of(cs.begin(), cs.end(), [&](CubeIndex v) { return contains(vertices, v); }))
      out.push_back(static_cast<CubeIndex>(i));
  }
  return out;
}

ConvexVerdict is_convex(const CubeComplex& x, const std::vector<CubeIndex>& cells, std::size_t pair_budget) {
  ConvexVerdict out;
  std::vector<CubeIndex> sorted(cells);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const VertexSet verts = vertices_of(x, sorted);
  const bool only_vertices = std::all_of(sorted.begin(), sorted.end(), [&](CubeIndex c) { return x.dim(c) == 0; });
  if (!only_vertices) {
    for (CubeIndex c : full_subcomplex(x, verts))
      if (!std::binary_search(sorted.begin(), sorted.end(), c)) {
        out.convex = false;
        out.witness = {x.id(c)};
        return out;
      }
  }
  std::vector<std::vector<int>> dist;
  for (CubeIndex v : verts) dist.push_back(distances_from(x, v));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (out.pairs_checked == pair_budget) {
        out.complete = false;
        return out;
      }
      ++out.pairs_checked;
      const int d = dist[i][static_cast<std::size_t>(verts[j])];
      if (d < 0) {
        out.convex = false;
        out.witness = {x.id(verts[i]), x.id(verts[j])};
        return out;
      }
      for (CubeIndex w : x.vertices()) {
        const int a = dist[i][static_cast<std::size_t>(w)], b = dist[j][static_cast<std::size_t>(w)];
        if (a + b == d && !contains(verts, w)) {
          out.convex = false;
          out.witness = {x.id(verts[i]), x.id(verts[j]), x.id(w)};
          return out;
        }
      }
    }
  return out;
}

Subcomplex star(const CubeComplex& x, const std::vector<CubeIndex>& cells) {
  const VertexSet verts = vertices_of(x, cells);
  std::vector<bool> keep(x.size(), false);
  for (CubeIndex v : verts) {
    keep[static_cast<std::size_t>(v)] = true;
    for (const Incidence& inc : x.incidences(v)) keep[static_cast<std::size_t>(inc.cube)] = true;
  }
  // Faces of kept cubes.
  for (std::size_t i = x.size(); i-- > 0;)
    if (keep[i])
      for (int a = 0; a < x.dim(static_cast<CubeIndex>(i)); ++a)
        for (int s = 0; s < 2; ++s) keep[static_cast<std::size_t>(x.face(static_cast<CubeIndex>(i), a, s))] = true;
  Subcomplex out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (keep[i]) out.push_back(static_cast<CubeIndex>(i));
  return out;
}

Subcomplex cubical_neighborhood(const CubeComplex& x, const std::vector<CubeIndex>& cells, int k) {
  Subcomplex cur(cells);
  std::sort(cur.begin(), cur.end());
  for (int i = 0; i < k; ++i) cur = star(x, cur);
  return cur;
}

Subcomplex wall_neighborhood(const CubeComplex& x, const WallSet& ws, int wall, int k) {
  if (wall < 0 || static_cast<std::size_t>(wall) >= ws.size())
    throw Error(ErrorCode::kUnknownWall, "unknown wall " + std::to_string(wall));
  if (k < 1) throw Error(ErrorCode::kMalformedInput, "neighborhood depth must be at least 1");
  const std::vector<CubeIndex>& carrier = ws.wall(wall).carrier;
  std::vector<bool> keep(x.size(), false);
  for (CubeIndex c : carrier) keep[static_cast<std::size_t>(c)] = true;
  for (std::size_t i = x.size(); i-- > 0;)
    if (keep[i])
      for (int a = 0; a < x.dim(static_cast<CubeIndex>(i)); ++a)
        for (int s = 0; s < 2; ++s) keep[static_cast<std::size_t>(x.face(static_cast<CubeIndex>(i), a, s))] = true;
  Subcomplex cur;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (keep[i]) cur.push_back(static_cast<CubeIndex>(i));
  return cubical_neighborhood(x, cur, k - 1);
}

// ---- sides, halfspaces, regions -----------------------------------------------

WallSides::WallSides(const CubeComplex& x, const WallSet& ws, CubeIndex root) : ws_(&ws), root_(root) {
  const std::size_t nw = ws.size();
  parity_.assign(x.size(), {});
  parity_[static_cast<std::size_t>(root)].assign(nw, 0);
  std::deque<CubeIndex> q{root};
  while (!q.empty()) {
    const CubeIndex u = q.front();
    q.pop_front();
    for (const EdgeEnd& e : x.edge_ends_at(u)) {
      const CubeIndex w = other_end(x, e);
      if (!parity_[static_cast<std::size_t>(w)].empty()) continue;
      parity_[static_cast<std::size_t>(w)] = parity_[static_cast<std::size_t>(u)];
      parity_[static_cast<std::size_t>(w)][static_cast<std::size_t>(ws.wall_of_edge(e.edge))] ^= 1;
      q.push_back(w);
    }
  }
  consistent_.assign(nw, true);
  for (CubeIndex e : x.edges()) {
    const auto& p0 = parity_[static_cast<std::size_t>(x.corner(e, 0))];
    const auto& p1 = parity_[static_cast<std::size_t>(x.corner(e, 1))];
    if (p0.empty()) continue;
    const std::size_t we = static_cast<std::size_t>(ws.wall_of_edge(e));
    for (std::size_t w = 0; w < nw; ++w)
      if ((p0[w] ^ p1[w]) != (w == we ? 1 : 0)) consistent_[w] = false;
  }
  flip_.assign(nw, 0);
  for (std::size_t w = 0; w < nw; ++w) {
    if (!consistent_[w]) continue;
    SidednessCertificate cert = sidedness(x, ws, static_cast<int>(w));
    const Wall& wall = ws.wall(static_cast<int>(w));
    for (std::size_t i = 0; i < wall.dual_edges.size(); ++i) {
      const CubeIndex init = x.corner(wall.dual_edges[i], cert.initial_end[i]);
      if (parity_[static_cast<std::size_t>(init)].empty()) continue;
      flip_[w] = parity_[static_cast<std::size_t>(init)][w];
      break;
    }
  }
}

int WallSides::side(int wall, CubeIndex v) const {
  const auto& p = parity_[static_cast<std::size_t>(v)];
  if (p.empty()) return 0;
  return (p[static_cast<std::size_t>(wall)] ^ flip_[static_cast<std::size_t>(wall)]) ? 1 : -1;
}

std::vector<int> WallSides::separating(CubeIndex u, CubeIndex v) const {
  std::vector<int> out;
  for (std::size_t w = 0; w < ws_->size(); ++w)
    if (side(static_cast<int>(w), u) != side(static_cast<int>(w), v)) out.push_back(static_cast<int>(w));
  return out;
}

HalfspacePair halfspaces(const CubeComplex& x, const WallSides& sides, int wall) {
  if (wall < 0 || static_cast<std::size_t>(wall) >= sides.walls().size())
    throw Error(ErrorCode::kUnknownWall, "unknown wall " + std::to_string(wall));
  HalfspacePair out;
  out.minus.wall = out.plus.wall = wall;
  out.plus.side = 1;
  for (CubeIndex v : x.vertices()) {
    const int s = sides.side(wall, v);
    if (s < 0) out.minus.vertices.push_back(v);
    if (s > 0) out.plus.vertices.push_back(v);
  }
  return out;
}

HalfspacePair halfspaces(const CoverBall& ball, const WallSides& sides, int wall) {
  HalfspacePair out = halfspaces(*ball.total, sides, wall);
  for (CubeIndex e : sides.walls().wall(wall).dual_edges)
    for (CubeIndex v : ball.total->corners(e))
      if (ball.depth[static_cast<std::size_t>(v)] >= ball.radius) out.touches_boundary = true;
  return out;
}

Region region_from_halfspaces(const CubeComplex& x, const WallSides& sides,
                              const std::vector<std::pair<int, int>>& hs) {
  Region out;
  out.halfspaces = hs;
  for (auto [w, s] : hs)
    if (w < 0 || static_cast<std::size_t>(w) >= sides.walls().size())
      throw Error(ErrorCode::kUnknownWall, "unknown wall " + std::to_string(w));
  for (CubeIndex v : x.vertices()) {
    if (!sides.reached(v)) continue;
    bool in = true;
    for (auto [w, s] : hs) in = in && sides.side(w, v) == (s < 0 ? -1 : 1);
    if (in) out.vertices.push_back(v);
  }
  if (out.vertices.empty()) throw Error(ErrorCode::kEmptyRegion, "the halfspaces have empty intersection");
  out.cubes = full_subcomplex(x, out.vertices);
  return out;
}

GateResult gate(const CubeComplex& x, const WallSides& sides, const VertexSet& region, CubeIndex v) {
  if (region.empty()) throw Error(ErrorCode::kEmptyRegion, "empty region");
  ConvexVerdict cv = is_convex(x, region);
  if (!cv.convex) throw Error(ErrorCode::kNotConvex, "region is not convex", cv.witness);
  const std::vector<int> d = distances_from(x, v);
  CubeIndex best = -1;
  int best_d = -1, ties = 0;
  for (CubeIndex y : region) {
    const int dy = d[static_cast<std::size_t>(y)];
    if (dy < 0) continue;
    if (best < 0 || dy < best_d) {
      best = y;
      best_d = dy;
      ties = 1;
    } else if (dy == best_d) {
      ++ties;
    }
  }
  if (best < 0) throw Error(ErrorCode::kDisconnected, "region is unreachable from " + x.id(v));
  if (ties > 1) throw Error(ErrorCode::kAmbiguous, "nearest vertex of the region is not unique", {x.id(v)});
  GateResult out;
  out.gate = best;
  for (std::size_t w = 0; w < sides.walls().size(); ++w) {
    const int sv = sides.side(static_cast<int>(w), v);
    bool all_opposite = true;
    for (CubeIndex y : region) all_opposite = all_opposite && sides.side(static_cast<int>(w), y) == -sv;
    if (all_opposite) out.separating_walls.push_back(static_cast<int>(w));
  }
  if (sides.separating(v, best) != out.separating_walls)
    throw Error(ErrorCode::kInternal, "gate fails the separating-wall characterization", {x.id(v), x.id(best)});
  return out;
}

// ---- boundary walls and portals -----------------------------------------------

BoundaryReport boundary_walls(const CubeComplex& x, const WallSet& ws, const VertexSet& region,
                              const std::map<int, int>& colors, int j) {
  if (region.empty()) throw Error(ErrorCode::kEmptyRegion, "empty region");
  BoundaryReport out;
  std::set<int> bw;
  std::map<int, std::vector<CubeIndex>> crossing;
  for (CubeIndex e : x.edges()) {
    const bool a = contains(region, x.corner(e, 0)), b = contains(region, x.corner(e, 1));
    if (a == b) continue;
    const int w = ws.wall_of_edge(e);
    bw.insert(w);
    crossing[w].push_back(e);
  }
  out.boundary_walls.assign(bw.begin(), bw.end());
  auto color_of = [&](int w) {
    auto it = colors.find(w);
    if (it == colors.end()) throw Error(ErrorCode::kUnknownWall, "wall " + std::to_string(w) + " has no color");
    return it->second;
  };
  for (int w : out.boundary_walls) {
    if (color_of(w) != j) continue;
    Portal p;
    p.wall = w;
    p.color = j;
    p.dual_edges = crossing[w];
    for (const Midcube& m : ws.wall(w).midcubes) {
      const CubeIndex c = m.cube;
      for (int s = 0; s < 2; ++s) {
        bool inside = true;
        for (int q = 0; q < (1 << x.dim(c)); ++q)
          if (((q >> m.axis) & 1) == s) inside = inside && contains(region, x.corner(c, q));
        if (inside) {
          p.cells.push_back(m);
          break;
        }
      }
    }
    out.portals.push_back(std::move(p));
  }
  for (CubeIndex v : region) {
    std::vector<CubeIndex> out_edges;
    for (const EdgeEnd& e : x.edge_ends_at(v)) {
      if (contains(region, other_end(x, e))) continue;
      if (color_of(ws.wall_of_edge(e.edge)) == j) out_edges.push_back(e.edge);
    }
    std::sort(out_edges.begin(), out_edges.end());
    out_edges.erase(std::unique(out_edges.begin(), out_edges.end()), out_edges.end());
    for (std::size_t a = 0; a < out_edges.size(); ++a)
      for (std::size_t b = a + 1; b < out_edges.size(); ++b)
        out.double_incidences.push_back(x.id(v) + ":" + x.id(out_edges[a]) + ":" + x.id(out_edges[b]));
  }
  return out;
}

}  // namespace cubetool
