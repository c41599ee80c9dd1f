#include "cubetool/hyperplanes.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace cubetool {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Axis of facet (i, s) of c that carries the restriction of midcube axis a.
int facet_axis(const Cube& c, int i, int s, int a) {
  const int k = a < i ? a : a - 1;
  for (int m = 0; m + 1 < c.dim; ++m) {
    int code = c.orient.empty() ? m : c.orient[static_cast<std::size_t>(2 * i + s)][static_cast<std::size_t>(m)];
    if ((code >= 0 ? code : ~code) == k) return m;
  }
  return -1;
}

using EndPair = std::pair<EdgeEnd, EdgeEnd>;

EndPair ordered(EdgeEnd a, EdgeEnd b) { return a < b ? EndPair{a, b} : EndPair{b, a}; }

// Pairs of edge-ends spanning a square corner.
std::set<EndPair> link_edges(const CubeComplex& x) {
  std::set<EndPair> out;
  for (CubeIndex q : x.cubes_of_dim(2))
    for (int pos = 0; pos < 4; ++pos) out.insert(ordered(x.edge_end(q, pos, 0), x.edge_end(q, pos, 1)));
  // Higher cubes contribute through their square faces.
  return out;
}

}  // namespace

WallSet::WallSet(const CubeComplex& x) {
  offset_.assign(x.size() + 1, 0);
  for (std::size_t c = 0; c < x.size(); ++c)
    offset_[c + 1] = offset_[c] + static_cast<std::size_t>(x.dim(static_cast<CubeIndex>(c)));
  UnionFind uf(offset_.back());
  for (std::size_t ci = 0; ci < x.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    const Cube& cb = x.cube(c);
    if (cb.dim < 2) continue;
    for (int a = 0; a < cb.dim; ++a)
      for (int i = 0; i < cb.dim; ++i) {
        if (i == a) continue;
        for (int s = 0; s < 2; ++s) {
          CubeIndex f = x.face(c, i, s);
          uf.unite(offset_[ci] + static_cast<std::size_t>(a),
                   offset_[static_cast<std::size_t>(f)] + static_cast<std::size_t>(facet_axis(cb, i, s, a)));
        }
      }
  }
  std::map<std::size_t, int> id_of_root;
  for (CubeIndex e : x.edges()) {
    std::size_t r = uf.find(offset_[static_cast<std::size_t>(e)]);
    if (!id_of_root.count(r)) id_of_root.emplace(r, static_cast<int>(id_of_root.size()));
  }
  walls_.resize(id_of_root.size());
  for (std::size_t w = 0; w < walls_.size(); ++w) walls_[w].id = static_cast<int>(w);
  midcube_wall_.assign(offset_.back(), -1);
  for (std::size_t ci = 0; ci < x.size(); ++ci) {
    for (int a = 0; a < x.dim(static_cast<CubeIndex>(ci)); ++a) {
      const std::size_t slot = offset_[ci] + static_cast<std::size_t>(a);
      const int w = id_of_root.at(uf.find(slot));
      midcube_wall_[slot] = w;
      Wall& wall = walls_[static_cast<std::size_t>(w)];
      wall.midcubes.push_back(Midcube{static_cast<CubeIndex>(ci), a});
      if (wall.carrier.empty() || wall.carrier.back() != static_cast<CubeIndex>(ci))
        wall.carrier.push_back(static_cast<CubeIndex>(ci));
      if (x.dim(static_cast<CubeIndex>(ci)) == 1) wall.dual_edges.push_back(static_cast<CubeIndex>(ci));
    }
  }
}

int SidednessCertificate::initial_of(const Wall& w, CubeIndex edge) const {
  auto it = std::lower_bound(w.dual_edges.begin(), w.dual_edges.end(), edge);
  return initial_end[static_cast<std::size_t>(it - w.dual_edges.begin())];
}

SidednessCertificate sidedness(const CubeComplex& x, const WallSet& ws, int wall) {
  if (wall < 0 || static_cast<std::size_t>(wall) >= ws.size())
    throw Error(ErrorCode::kUnknownWall, "unknown wall " + std::to_string(wall));
  const Wall& w = ws.wall(wall);
  const std::size_t n = w.dual_edges.size();
  auto idx = [&](CubeIndex e) {
    return static_cast<std::size_t>(std::lower_bound(w.dual_edges.begin(), w.dual_edges.end(), e) - w.dual_edges.begin());
  };
  struct Constraint {
    std::size_t other;
    int parity;
    CubeIndex cube;
  };
  std::vector<std::vector<Constraint>> adj(n);
  for (const Midcube& m : w.midcubes) {
    const int d = x.dim(m.cube);
    if (d < 2) continue;
    std::optional<EdgeEnd> first;
    for (int p = 0; p < (1 << d); ++p) {
      if ((p >> m.axis) & 1) continue;
      EdgeEnd e = x.edge_end(m.cube, p, m.axis);
      if (!first) {
        first = e;
        continue;
      }
      const std::size_t u = idx(first->edge), v = idx(e.edge);
      const int par = first->end ^ e.end;
      adj[u].push_back({v, par, m.cube});
      if (u != v) adj[v].push_back({u, par, m.cube});
    }
  }
  SidednessCertificate cert;
  cert.wall = wall;
  cert.initial_end.assign(n, -1);
  std::vector<std::size_t> parent(n, n);
  std::vector<CubeIndex> via(n, -1);
  for (std::size_t root = 0; root < n; ++root) {
    if (cert.initial_end[root] >= 0) continue;
    cert.initial_end[root] = 0;
    std::deque<std::size_t> q{root};
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (const Constraint& c : adj[u]) {
        const int want = cert.initial_end[u] ^ c.parity;
        if (cert.initial_end[c.other] < 0) {
          cert.initial_end[c.other] = want;
          parent[c.other] = u;
          via[c.other] = c.cube;
          q.push_back(c.other);
        } else if (cert.initial_end[c.other] != want && cert.two_sided) {
          cert.two_sided = false;
          // Tree paths up from both ends, joined at their first common node.
          std::vector<std::size_t> pu{u}, pv{c.other};
          while (parent[pu.back()] != n) pu.push_back(parent[pu.back()]);
          while (parent[pv.back()] != n) pv.push_back(parent[pv.back()]);
          while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
          }
          auto step = [&](CubeIndex cube, std::size_t node) {
            return (cube >= 0 ? x.id(cube) : std::string("-")) + ":" + x.id(w.dual_edges[node]);
          };
          std::vector<std::string> cyc;
          cyc.push_back(step(c.cube, c.other));
          for (std::size_t i = 0; i + 1 < pv.size(); ++i) cyc.push_back(step(via[pv[i]], pv[i + 1]));
          std::vector<std::string> down;
          for (std::size_t i = 0; i + 1 < pu.size(); ++i) down.push_back(step(via[pu[i]], pu[i]));
          cyc.insert(cyc.end(), down.rbegin(), down.rend());
          cert.odd_cycle = std::move(cyc);
        }
      }
    }
  }
  if (!cert.two_sided) cert.initial_end.clear();
  return cert;
}

std::vector<std::string> direct_self_osculation(const CubeComplex& x, const WallSet& ws, int wall) {
  SidednessCertificate cert = sidedness(x, ws, wall);
  if (!cert.two_sided)
    throw Error(ErrorCode::kRequiresTwoSided, "wall " + std::to_string(wall) + " is one-sided");
  const Wall& w = ws.wall(wall);
  std::set<EndPair> adj = link_edges(x);
  for (CubeIndex v : x.vertices()) {
    std::vector<std::pair<EdgeEnd, bool>> ends;  // end, is initial
    for (const EdgeEnd& e : x.edge_ends_at(v))
      if (ws.wall_of_edge(e.edge) == wall) ends.push_back({e, cert.initial_of(w, e.edge) == e.end});
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        if (ends[i].second != ends[j].second || ends[i].first.edge == ends[j].first.edge) continue;
        if (adj.count(ordered(ends[i].first, ends[j].first))) continue;
        return {x.id(v), edge_end_string(x, ends[i].first), edge_end_string(x, ends[j].first),
                ends[i].second ? "initial" : "terminal"};
      }
  }
  return {};
}

SpecialnessReport pathologies(const CubeComplex& x) { return pathologies(x, WallSet(x)); }

SpecialnessReport pathologies(const CubeComplex& x, const WallSet& ws) {
  SpecialnessReport rep;
  for (const Wall& w : ws.walls()) {
    WallFlags f;
    f.wall = w.id;
    for (std::size_t i = 0; i + 1 < w.midcubes.size(); ++i)
      if (w.midcubes[i].cube == w.midcubes[i + 1].cube && !f.self_crossing) {
        f.self_crossing = true;
        f.witness.push_back("self-crossing in " + x.id(w.midcubes[i].cube));
      }
    SidednessCertificate cert = sidedness(x, ws, w.id);
    if (!cert.two_sided) {
      f.one_sided = true;
      f.witness.push_back("odd cycle");
      f.witness.insert(f.witness.end(), cert.odd_cycle.begin(), cert.odd_cycle.end());
    } else {
      auto dso = direct_self_osculation(x, ws, w.id);
      if (!dso.empty()) {
        f.direct_self_osculation = true;
        f.witness.push_back("direct self-osculation at " + dso[0]);
        f.witness.insert(f.witness.end(), dso.begin() + 1, dso.end());
      }
    }
    rep.special = rep.special && !f.self_crossing && !f.one_sided && !f.direct_self_osculation;
    rep.walls.push_back(std::move(f));
  }
  std::set<std::pair<int, int>> crossing;
  for (std::size_t ci = 0; ci < x.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    for (int a = 0; a < x.dim(c); ++a)
      for (int b = a + 1; b < x.dim(c); ++b) {
        int wa = ws.wall_of(c, a), wb = ws.wall_of(c, b);
        if (wa != wb) crossing.insert({std::min(wa, wb), std::max(wa, wb)});
      }
  }
  std::set<EndPair> adj = link_edges(x);
  std::map<std::pair<int, int>, InterOsculation> found;
  for (CubeIndex v : x.vertices()) {
    auto ends = x.edge_ends_at(v);
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        int wa = ws.wall_of_edge(ends[i].edge), wb = ws.wall_of_edge(ends[j].edge);
        if (wa == wb) continue;
        std::pair<int, int> key{std::min(wa, wb), std::max(wa, wb)};
        if (!crossing.count(key) || found.count(key)) continue;
        if (adj.count(ordered(ends[i], ends[j]))) continue;
        found.emplace(key, InterOsculation{key.first, key.second, x.id(v),
                                           {edge_end_string(x, ends[i]), edge_end_string(x, ends[j])}});
      }
  }
  for (auto& [k, io] : found) rep.inter_osculations.push_back(std::move(io));
  if (!rep.inter_osculations.empty()) rep.special = false;
  return rep;
}

CubicalMap lift_to_subdivision(const CubicalMap& g, const ComplexPtr& sub) {
  const CubeComplex& x = g.domain();
  if (&g.domain() != &g.codomain() && g.domain().name() != g.codomain().name())
    throw Error(ErrorCode::kMalformedMap, "automorphism must be a self-map");
  if (!g.dimension_preserving()) throw Error(ErrorCode::kMalformedMap, "automorphism collapses a cube");
  std::vector<CubeImage> images(sub->size());
  std::vector<bool> filled(sub->size(), false);
  for (std::size_t ci = 0; ci < x.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    const int d = x.dim(c);
    const CubeIndex gc = g.image(c);
    std::vector<int> target(static_cast<std::size_t>(d)), refl(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      int code = g.axis_image(c, i);
      target[static_cast<std::size_t>(i)] = code >= 0 ? code : ~code;
      refl[static_cast<std::size_t>(i)] = code < 0;
    }
    for (const Pattern& pi : all_patterns(d)) {
      Pattern img(static_cast<std::size_t>(d), kFree);
      std::vector<int> fixed;
      for (int i = 0; i < d; ++i) {
        const auto v = pi[static_cast<std::size_t>(i)];
        if (v == kFree) continue;
        fixed.push_back(i);
        img[static_cast<std::size_t>(target[static_cast<std::size_t>(i)])] =
            static_cast<std::int8_t>(v ^ refl[static_cast<std::size_t>(i)]);
      }
      std::vector<int> img_fixed;
      for (int t = 0; t < d; ++t)
        if (img[static_cast<std::size_t>(t)] != kFree) img_fixed.push_back(t);
      const int k = static_cast<int>(fixed.size());
      CornerMap m(std::size_t{1} << k);
      for (int q = 0; q < (1 << k); ++q) {
        int out = 0;
        for (int b = 0; b < k; ++b) {
          if (!((q >> b) & 1)) continue;
          int t = target[static_cast<std::size_t>(fixed[static_cast<std::size_t>(b)])];
          out |= 1 << (std::find(img_fixed.begin(), img_fixed.end(), t) - img_fixed.begin());
        }
        m[static_cast<std::size_t>(q)] = out;
      }
      auto src = sub->find(subdivision_cube_id(x.id(c), pi));
      auto dst = sub->find(subdivision_cube_id(x.id(gc), img));
      if (!src || !dst) throw Error(ErrorCode::kMalformedMap, "subdivision does not match the automorphism's complex");
      images[static_cast<std::size_t>(*src)] = CubeImage{*dst, std::move(m)};
      filled[static_cast<std::size_t>(*src)] = true;
    }
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end())
    throw Error(ErrorCode::kMalformedMap, "subdivision has cubes not covered by the lift");
  return CubicalMap::from_images(sub, sub, std::move(images));
}

CoOrientation co_orient_subdivision(const CubeComplex& x, const std::vector<CubicalMap>& autos) {
  auto sub = std::make_shared<const CubeComplex>(barycentric_subdivision(x).complex);
  std::vector<CubicalMap> lifts;
  for (const CubicalMap& g : autos) lifts.push_back(lift_to_subdivision(g, sub));
  return co_orient(sub, lifts);
}

CoOrientation co_orient(const ComplexPtr& sub, const std::vector<CubicalMap>& lifts) {
  for (const CubicalMap& g : lifts)
    if (g.domain().size() != sub->size() || g.codomain().size() != sub->size() || !g.dimension_preserving())
      throw Error(ErrorCode::kMalformedMap, "automorphism does not act on the complex");
  WallSet ws(*sub);
  std::vector<SidednessCertificate> base;
  for (const Wall& w : ws.walls()) {
    base.push_back(sidedness(*sub, ws, w.id));
    if (!base.back().two_sided)
      throw Error(ErrorCode::kOneSidedWall, "wall " + std::to_string(w.id) + " is one-sided");
  }
  const std::size_t nw = ws.size();
  std::vector<int> flip(nw, -1);
  CoOrientation out;
  out.complex = sub;
  std::set<std::pair<int, int>> flips;
  auto initial = [&](std::size_t w, CubeIndex e) { return base[w].initial_of(ws.wall(static_cast<int>(w)), e) ^ flip[w]; };
  for (std::size_t root = 0; root < nw; ++root) {
    if (flip[root] >= 0) continue;
    flip[root] = 0;
    std::deque<std::size_t> q{root};
    while (!q.empty()) {
      const std::size_t w = q.front();
      q.pop_front();
      const CubeIndex e = ws.wall(static_cast<int>(w)).dual_edges.front();
      for (std::size_t gi = 0; gi < lifts.size(); ++gi) {
        const CubicalMap& g = lifts[gi];
        const CubeIndex ge = g.image(e);
        const std::size_t gw = static_cast<std::size_t>(ws.wall_of_edge(ge));
        const int img_initial = g.corners(e)[static_cast<std::size_t>(initial(w, e))];
        const int want = img_initial ^ base[gw].initial_of(ws.wall(static_cast<int>(gw)), ge);
        if (flip[gw] < 0) {
          flip[gw] = want;
          q.push_back(gw);
        } else if (flip[gw] != want) {
          flips.insert({static_cast<int>(gi), static_cast<int>(gw)});
        }
      }
    }
  }
  for (std::size_t gi = 0; gi < lifts.size(); ++gi)
    for (const Wall& w : ws.walls())
      for (CubeIndex e : w.dual_edges) {
        const CubeIndex ge = lifts[gi].image(e);
        const std::size_t gw = static_cast<std::size_t>(ws.wall_of_edge(ge));
        if (lifts[gi].corners(e)[static_cast<std::size_t>(initial(static_cast<std::size_t>(w.id), e))] != initial(gw, ge))
          flips.insert({static_cast<int>(gi), static_cast<int>(gw)});
      }
  out.flips.assign(flips.begin(), flips.end());
  out.equivariant = out.flips.empty();
  for (std::size_t w = 0; w < nw; ++w) {
    std::vector<int> ends;
    for (CubeIndex e : ws.wall(static_cast<int>(w)).dual_edges) ends.push_back(initial(w, e));
    out.initial_end.push_back(std::move(ends));
  }
  return out;
}

}  // namespace cubetool
