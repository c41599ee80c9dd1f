// Brute-force reference implementations used only by the tests. They reuse
// the validated data model but none of the library's derived tables.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cubetool/complex.hpp"

namespace oracle {

using cubetool::Cube;
using cubetool::CubeComplex;
using cubetool::CubeIndex;

// Corner of the parent reached from corner q of facet (axis, side).
inline int facet_corner(const Cube& c, int axis, int side, int q) {
  std::vector<int> rest;
  for (int i = 0; i < c.dim; ++i)
    if (i != axis) rest.push_back(i);
  int p = side << axis;
  for (int m = 0; m + 1 < c.dim; ++m) {
    int code = c.orient.empty() ? m : c.orient[static_cast<std::size_t>(2 * axis + side)][static_cast<std::size_t>(m)];
    int k = code < 0 ? -code - 1 : code;
    int bit = ((q >> m) & 1) ^ (code < 0);
    p |= bit << rest[static_cast<std::size_t>(k)];
  }
  return p;
}

// Edge through corner `pos` of cube `id` along `axis`, found by fixing the
// highest fixed axis first. Returns (edge id, end at that corner).
inline std::pair<std::string, int> edge_through(const CubeComplex& x, const std::string& id, int pos, int axis) {
  const Cube* c = &x.cube(*x.find(id));
  // Track the corner as a position in the current cube, and the axis.
  while (c->dim > 1) {
    int fix = c->dim - 1 == axis ? c->dim - 2 : c->dim - 1;
    int side = (pos >> fix) & 1;
    const Cube& f = x.cube(*x.find(c->faces[static_cast<std::size_t>(2 * fix + side)]));
    int q_found = -1, new_axis = -1;
    for (int q = 0; q < (1 << f.dim); ++q)
      if (facet_corner(*c, fix, side, q) == pos) q_found = q;
    for (int m = 0; m < f.dim; ++m) {
      int p0 = facet_corner(*c, fix, side, q_found);
      int p1 = facet_corner(*c, fix, side, q_found ^ (1 << m));
      if ((p0 ^ p1) == (1 << axis)) new_axis = m;
    }
    pos = q_found;
    axis = new_axis;
    c = &f;
  }
  return {c->id, pos};
}

struct LinkData {
  std::vector<std::pair<std::string, int>> verts;
  std::vector<std::vector<int>> simplices;
};

inline LinkData link_of(const CubeComplex& x, const std::string& v) {
  LinkData lk;
  for (const Cube& c : x.cubes())
    if (c.dim == 1)
      for (int t = 0; t < 2; ++t)
        if (c.corners[static_cast<std::size_t>(t)] == v) lk.verts.push_back({c.id, t});
  std::sort(lk.verts.begin(), lk.verts.end());
  for (const Cube& c : x.cubes()) {
    if (c.dim == 0) continue;
    for (int p = 0; p < (1 << c.dim); ++p) {
      if (c.corners[static_cast<std::size_t>(p)] != v) continue;
      std::vector<int> s;
      for (int a = 0; a < c.dim; ++a) {
        auto e = edge_through(x, c.id, p, a);
        s.push_back(static_cast<int>(std::lower_bound(lk.verts.begin(), lk.verts.end(), e) - lk.verts.begin()));
      }
      lk.simplices.push_back(s);
    }
  }
  return lk;
}

// Flag simplicial links everywhere, by subset enumeration.
inline bool npc(const CubeComplex& x) {
  for (const Cube& v : x.cubes()) {
    if (v.dim != 0) continue;
    LinkData lk = link_of(x, v.id);
    std::set<std::vector<int>> sets;
    for (auto s : lk.simplices) {
      std::sort(s.begin(), s.end());
      if (std::set<int>(s.begin(), s.end()).size() != s.size()) return false;
      if (!sets.insert(s).second) return false;
    }
    const int n = static_cast<int>(lk.verts.size());
    if (n > 22) return false;  // outside oracle scale
    for (long mask = 0; mask < (1L << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) s.push_back(i);
      if (s.size() < 2) continue;
      bool clique = true;
      for (std::size_t i = 0; i < s.size() && clique; ++i)
        for (std::size_t j = i + 1; j < s.size() && clique; ++j)
          clique = sets.count({s[i], s[j]}) > 0;
      if (clique && !sets.count(s)) return false;
    }
  }
  return true;
}

// Pairs F <= G of cells, by containment of corner sets, counted by dimension
// gap. Meaningful for complexes whose cells are determined by their corners.
inline std::vector<int> interval_counts(const CubeComplex& x) {
  std::vector<int> out(static_cast<std::size_t>(x.dim() + 1), 0);
  for (const Cube& g : x.cubes()) {
    std::set<std::string> gs(g.corners.begin(), g.corners.end());
    for (const Cube& f : x.cubes()) {
      if (f.dim > g.dim) continue;
      bool inside = std::all_of(f.corners.begin(), f.corners.end(), [&](const std::string& v) { return gs.count(v) > 0; });
      if (inside) out[static_cast<std::size_t>(g.dim - f.dim)]++;
    }
  }
  return out;
}

struct Pathologies {
  // Per wall, walls ordered by least dual edge id: self-crossing, one-sided,
  // direct self-osculation.
  std::vector<std::vector<bool>> flags;
  bool inter_osculation = false;
  bool special = true;
};

// Walls as classes of edges under "opposite in a square", orientations by
// exhaustive search, osculations by enumerating all pairs of edge-ends.
inline Pathologies pathologies(const CubeComplex& x) {
  std::vector<std::string> edges;
  for (const Cube& c : x.cubes())
    if (c.dim == 1) edges.push_back(c.id);
  std::sort(edges.begin(), edges.end());
  auto eidx = [&](const std::string& e) { return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin()); };
  std::vector<int> parent(edges.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) { return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]); };
  struct Par {
    int e1, t1, e2, t2;
  };
  std::vector<Par> pars;
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> corners;  // spanning pairs
  std::vector<std::pair<int, int>> crossings;
  for (const Cube& q : x.cubes()) {
    if (q.dim != 2) continue;
    for (int a = 0; a < 2; ++a) {
      auto lo = edge_through(x, q.id, 0, a);
      auto hi = edge_through(x, q.id, a == 0 ? 2 : 1, a);
      pars.push_back({eidx(lo.first), lo.second, eidx(hi.first), hi.second});
      int r1 = find(eidx(lo.first)), r2 = find(eidx(hi.first));
      parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
    }
    for (int p = 0; p < 4; ++p) {
      auto u = edge_through(x, q.id, p, 0), w = edge_through(x, q.id, p, 1);
      std::pair<int, int> a{eidx(u.first), u.second}, b{eidx(w.first), w.second};
      corners.insert({std::min(a, b), std::max(a, b)});
    }
  }
  for (const Cube& q : x.cubes())
    if (q.dim == 2) crossings.push_back({find(eidx(edge_through(x, q.id, 0, 0).first)), find(eidx(edge_through(x, q.id, 0, 1).first))});
  std::map<int, int> wall_id;  // root -> id in order of least edge
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!wall_id.count(find(static_cast<int>(i)))) wall_id.emplace(find(static_cast<int>(i)), static_cast<int>(wall_id.size()));
  Pathologies out;
  out.flags.assign(wall_id.size(), std::vector<bool>(3, false));
  for (auto [r1, r2] : crossings)
    if (r1 == r2) out.flags[static_cast<std::size_t>(wall_id[r1])][0] = true;
  std::map<int, std::vector<int>> orient_of;  // root -> orientation per edge index (-1 outside)
  for (auto [root, id] : wall_id) {
    std::vector<int> members;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (find(static_cast<int>(i)) == root) members.push_back(static_cast<int>(i));
    std::vector<int> o(edges.size(), -1);
    bool found = false;
    const int n = static_cast<int>(members.size());
    if (n <= 18) {
      for (long mask = 0; mask < (1L << n) && !found; ++mask) {
        for (int k = 0; k < n; ++k) o[static_cast<std::size_t>(members[static_cast<std::size_t>(k)])] = static_cast<int>((mask >> k) & 1);
        bool ok = true;
        for (const Par& p : pars)
          if (find(p.e1) == root) ok = ok && ((o[static_cast<std::size_t>(p.e1)] ^ p.t1) == (o[static_cast<std::size_t>(p.e2)] ^ p.t2));
        found = ok;
      }
    }
    if (!found) out.flags[static_cast<std::size_t>(id)][1] = true;
    orient_of[root] = o;
  }
  std::set<std::pair<int, int>> cross_set;
  for (auto [a, b] : crossings) cross_set.insert({std::min(a, b), std::max(a, b)});
  for (const Cube& v : x.cubes()) {
    if (v.dim != 0) continue;
    std::vector<std::pair<int, int>> ends;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Cube& e = x.cube(*x.find(edges[i]));
      for (int t = 0; t < 2; ++t)
        if (e.corners[static_cast<std::size_t>(t)] == v.id) ends.push_back({static_cast<int>(i), t});
    }
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        if (corners.count({std::min(ends[i], ends[j]), std::max(ends[i], ends[j])})) continue;
        int ri = find(ends[i].first), rj = find(ends[j].first);
        if (ri == rj) {
          const int id = wall_id[ri];
          if (out.flags[static_cast<std::size_t>(id)][1] || ends[i].first == ends[j].first) continue;
          const auto& o = orient_of[ri];
          bool init_i = o[static_cast<std::size_t>(ends[i].first)] == ends[i].second;
          bool init_j = o[static_cast<std::size_t>(ends[j].first)] == ends[j].second;
          if (init_i == init_j) out.flags[static_cast<std::size_t>(id)][2] = true;
        } else if (cross_set.count({std::min(ri, rj), std::max(ri, rj)})) {
          out.inter_osculation = true;
        }
      }
  }
  out.special = !out.inter_osculation;
  for (const auto& f : out.flags) out.special = out.special && !f[0] && !f[1] && !f[2];
  return out;
}


// Edge-metric distances between all vertex ids, by Floyd-Warshall over the
// corner lists of the edges.
inline std::map<std::string, std::map<std::string, int>> all_distances(const CubeComplex& x) {
  std::vector<std::string> vs;
  for (const Cube& c : x.cubes())
    if (c.dim == 0) vs.push_back(c.id);
  const std::size_t n = vs.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  auto at = [&](const std::string& v) { return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Cube& c : x.cubes())
    if (c.dim == 1) {
      const std::size_t a = at(c.corners[0]), b = at(c.corners[1]);
      d[a][b] = std::min(d[a][b], 1);
      d[b][a] = std::min(d[b][a], 1);
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::map<std::string, std::map<std::string, int>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[vs[i]][vs[j]] = d[i][j] >= inf ? -1 : d[i][j];
  return out;
}

// Wall number of every edge id: classes under "opposite in a square",
// numbered in order of least edge id.
inline std::map<std::string, int> edge_walls(const CubeComplex& x) {
  std::vector<std::string> edges;
  for (const Cube& c : x.cubes())
    if (c.dim == 1) edges.push_back(c.id);
  std::map<std::string, std::string> parent;
  for (const auto& e : edges) parent[e] = e;
  std::function<std::string(const std::string&)> find = [&](const std::string& e) {
    return parent[e] == e ? e : parent[e] = find(parent[e]);
  };
  for (const Cube& q : x.cubes()) {
    if (q.dim != 2) continue;
    for (int a = 0; a < 2; ++a) {
      std::string r1 = find(edge_through(x, q.id, 0, a).first);
      std::string r2 = find(edge_through(x, q.id, a == 0 ? 2 : 1, a).first);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  std::map<std::string, int> root_id, out;
  for (const auto& e : edges) {
    const std::string r = find(e);
    if (!root_id.count(r)) root_id.emplace(r, static_cast<int>(root_id.size()));
    out[e] = root_id[r];
  }
  return out;
}

// Whether wall w separates u from v: they fall in different components once
// the wall's dual edges are removed. Meaningful in simply connected complexes.
inline bool separates(const CubeComplex& x, const std::map<std::string, int>& walls, int w, const std::string& u,
                      const std::string& v) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const Cube& c : x.cubes())
    if (c.dim == 1 && walls.at(c.id) != w) {
      adj[c.corners[0]].push_back(c.corners[1]);
      adj[c.corners[1]].push_back(c.corners[0]);
    }
  std::set<std::string> seen{u};
  std::vector<std::string> stack{u};
  while (!stack.empty()) {
    std::string a = stack.back();
    stack.pop_back();
    for (const auto& b : adj[a])
      if (seen.insert(b).second) stack.push_back(b);
  }
  return !seen.count(v);
}

// Least distance between the carrier vertex sets of every pair of walls,
// -1 across components. Carrier vertices of a wall are the corners of cubes
// with an edge in it.
inline std::vector<std::vector<int>> wall_distances(const CubeComplex& x) {
  const auto walls = edge_walls(x);
  int n = 0;
  for (const auto& [e, w] : walls) n = std::max(n, w + 1);
  std::vector<std::set<std::string>> carrier(static_cast<std::size_t>(n));
  for (const Cube& c : x.cubes()) {
    if (c.dim == 0) continue;
    for (int pos = 0; pos < (1 << c.dim); ++pos)
      for (int axis = 0; axis < c.dim; ++axis) {
        const int w = walls.at(edge_through(x, c.id, pos, axis).first);
        carrier[static_cast<std::size_t>(w)].insert(c.corners.begin(), c.corners.end());
      }
  }
  const auto d = all_distances(x);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& u : carrier[static_cast<std::size_t>(a)])
        for (const auto& v : carrier[static_cast<std::size_t>(b)]) {
          const int duv = d.at(u).at(v);
          int& cur = out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
          if (duv >= 0 && (cur < 0 || duv < cur)) cur = duv;
        }
  return out;
}

}  // namespace oracle
