#include "cubetool/completion.hpp"

#include <algorithm>
#include <set>

#include "cubetool/hyperplanes.hpp"

namespace cubetool {

namespace {

EdgeEnd map_end(const CubicalMap& f, const EdgeEnd& e) {
  return EdgeEnd{f.image(e.edge), f.corners(e.edge)[static_cast<std::size_t>(e.end)]};
}

std::string end_string(const CubeComplex& x, const EdgeEnd& e) { return edge_end_string(x, e); }

}  // namespace

const char* edge_kind_name(EdgeKind k) { return k == EdgeKind::kHorizontal ? "horizontal" : "diagonal"; }

PreconditionReport completion_preconditions(const CubeComplex& b) {
  PreconditionReport out;
  std::set<std::pair<CubeIndex, CubeIndex>> ends;
  for (CubeIndex e : b.edges()) {
    CubeIndex u = b.corner(e, 0), v = b.corner(e, 1);
    if (u == v) {
      out.simplicial = false;
      out.failures.push_back("loop " + b.id(e));
      continue;
    }
    if (!ends.insert({std::min(u, v), std::max(u, v)}).second) {
      out.simplicial = false;
      out.failures.push_back("parallel edge " + b.id(e));
    }
  }
  WallSet ws(b);
  SpecialnessReport rep = pathologies(b, ws);
  for (const WallFlags& f : rep.walls) {
    const std::string name = "wall " + std::to_string(f.wall);
    if (f.self_crossing) out.failures.push_back(name + " self-crosses");
    if (f.one_sided) out.failures.push_back(name + " is one-sided");
    if (f.direct_self_osculation) out.failures.push_back(name + " directly self-osculates");
  }
  for (CubeIndex v : b.vertices()) {
    std::map<int, CubeIndex> seen;
    for (const EdgeEnd& e : b.edge_ends_at(v)) {
      auto [it, fresh] = seen.emplace(ws.wall_of_edge(e.edge), e.edge);
      if (!fresh && it->second != e.edge)
        out.failures.push_back("wall " + std::to_string(it->first) + " meets " + b.id(v) + " twice");
    }
  }
  out.ok = out.failures.empty();
  return out;
}

CompletionResult canonical_completion(const CubicalMap& f) {
  const CubeComplex& a = f.domain();
  const CubeComplex& b = f.codomain();
  if (!f.dimension_preserving()) throw Error(ErrorCode::kPreconditionFailed, "map is not dimension preserving");
  if (!is_npc(a).npc || !is_npc(b).npc) throw Error(ErrorCode::kPreconditionFailed, "complexes must be non-positively curved");
  MapVerdict li = is_local_isometry(f);
  if (!li.ok) throw Error(ErrorCode::kPreconditionFailed, "map is not a local isometry at " + li.vertex, {li.vertex, li.reason});
  PreconditionReport pre = completion_preconditions(b);
  if (!pre.ok) throw Error(ErrorCode::kPreconditionFailed, "target fails the completion preconditions", pre.failures);

  WallSet wb(b);
  // Per vertex of A: wall of B -> far end of the A-edge at that vertex whose
  // image is dual to it.
  std::vector<std::map<int, CubeIndex>> across(a.size());
  for (CubeIndex v : a.vertices())
    for (const EdgeEnd& e : a.edge_ends_at(v)) {
      const int w = wb.wall_of_edge(f.image(e.edge));
      if (!across[static_cast<std::size_t>(v)].emplace(w, a.corner(e.edge, 1 - e.end)).second)
        throw Error(ErrorCode::kCoveringCheckFailed, "two edges at " + a.id(v) + " map into one wall");
    }
  auto transport = [&](CubeIndex av, const EdgeEnd& be) {
    const auto& m = across[static_cast<std::size_t>(av)];
    auto it = m.find(wb.wall_of_edge(be.edge));
    return it == m.end() ? av : it->second;
  };

  CubeComplexDescription desc;
  desc.name = "completion(" + a.name() + "," + b.name() + ")";
  desc.dim_cap = b.dim_cap();
  auto vname = [&](CubeIndex bv, CubeIndex av) { return b.id(bv) + "@" + a.id(av); };
  std::map<std::string, EdgeKind> kinds;
  for (std::size_t qi = 0; qi < b.size(); ++qi) {
    const CubeIndex q = static_cast<CubeIndex>(qi);
    const int d = b.dim(q);
    if (d > 2) continue;
    for (CubeIndex av : a.vertices()) {
      std::vector<CubeIndex> coord(static_cast<std::size_t>(1) << d, av);
      for (int p = 1; p < (1 << d); ++p) {
        const int i = __builtin_ctz(static_cast<unsigned>(p));
        coord[static_cast<std::size_t>(p)] = transport(coord[static_cast<std::size_t>(p ^ (1 << i))], b.edge_end(q, p ^ (1 << i), i));
      }
      if (d == 2 && transport(coord[1], b.edge_end(q, 1, 1)) != coord[3])
        throw Error(ErrorCode::kCoveringCheckFailed, "the boundary of " + b.id(q) + " does not lift to a loop at " + a.id(av));
      Cube c;
      c.id = b.id(q) + "@" + a.id(av);
      c.dim = d;
      c.orient = b.cube(q).orient;
      for (int p = 0; p < (1 << d); ++p)
        c.corners.push_back(vname(b.corner(q, p), coord[static_cast<std::size_t>(p)]));
      for (int i = 0; i < d; ++i)
        for (int s = 0; s < 2; ++s)
          c.faces.push_back(b.id(b.face(q, i, s)) + "@" +
                            a.id(coord[static_cast<std::size_t>(b.attach(q, i, s)[0])]));
      if (d == 1) kinds[c.id] = coord[1] == coord[0] ? EdgeKind::kHorizontal : EdgeKind::kDiagonal;
      desc.cubes.push_back(std::move(c));
    }
  }
  auto c = std::make_shared<const CubeComplex>(flag_complete(CubeComplex::validate(std::move(desc))));

  CompletionResult out{c, CubicalMap::identity(c), CubicalMap::identity(c), CubicalMap::identity(c), {}, std::move(kinds), 0, 0};
  std::map<std::string, std::string> to_b, from_a;
  std::map<std::string, std::pair<CubeIndex, CubeIndex>> pair_of;
  for (CubeIndex bv : b.vertices())
    for (CubeIndex av : a.vertices()) {
      to_b[vname(bv, av)] = b.id(bv);
      pair_of[vname(bv, av)] = {av, bv};
    }
  for (CubeIndex av : a.vertices()) from_a[a.id(av)] = vname(f.image(av), av);
  for (CubeIndex v : c->vertices()) out.vertex_pairs[v] = pair_of.at(c->id(v));
  out.projection = CubicalMap::from_vertex_map(c, f.codomain_ptr(), to_b);
  out.inclusion = CubicalMap::from_vertex_map(f.domain_ptr(), c, from_a);

  // The retraction keeps the diagonal axes of each cube and collapses the
  // horizontal ones.
  std::vector<CubeImage> r(c->size());
  for (std::size_t ci = 0; ci < c->size(); ++ci) {
    const CubeIndex q = static_cast<CubeIndex>(ci);
    const int d = c->dim(q);
    std::vector<CubeIndex> coord;
    for (CubeIndex v : c->corners(q)) coord.push_back(out.vertex_pairs.at(v).first);
    int k = 0;
    for (int i = 0; i < d; ++i) k += coord[static_cast<std::size_t>(1) << i] != coord[0];
    std::set<CubeIndex> want(coord.begin(), coord.end());
    CubeIndex image = -1;
    if (k == 0) {
      image = coord[0];
    } else {
      for (const Incidence& inc : a.incidences(coord[0])) {
        if (a.dim(inc.cube) != k) continue;
        const auto& cs = a.corners(inc.cube);
        if (std::set<CubeIndex>(cs.begin(), cs.end()) == want) {
          image = inc.cube;
          break;
        }
      }
    }
    if (image < 0) throw Error(ErrorCode::kCoveringCheckFailed, "no cube of A under " + c->id(q));
    CornerMap m;
    const auto& cs = a.corners(image);
    for (CubeIndex v : coord) m.push_back(static_cast<int>(std::find(cs.begin(), cs.end(), v) - cs.begin()));
    r[ci] = CubeImage{image, std::move(m)};
  }
  out.retraction = CubicalMap::from_images(c, f.domain_ptr(), std::move(r));

  if (auto d = cell_difference(compose(out.inclusion, out.retraction), CubicalMap::identity(f.domain_ptr())))
    throw Error(ErrorCode::kCoveringCheckFailed, "r j differs from the identity at " + *d);
  if (auto d = cell_difference(compose(out.inclusion, out.projection), f))
    throw Error(ErrorCode::kCoveringCheckFailed, "p j differs from f at " + *d);
  CoveringReport cov;
  try {
    cov = verify_covering(out.projection);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCoveringCheckFailed, std::string("projection is not a covering: ") + e.what(), e.details());
  }
  for (int deg : cov.component_degrees)
    if (deg != static_cast<int>(a.count(0)))
      throw Error(ErrorCode::kCoveringCheckFailed, "fiber size differs from the number of vertices of A");
  out.degree = static_cast<int>(a.count(0));
  vertex_components(*c, &out.components);
  return out;
}

bool FunctorialConditions::all_ok() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionCheck& c) { return c.ok; });
}

FunctorialConditions functorial_conditions(const CommutingSquare& sq) {
  for (const CubicalMap* m : {&sq.f, &sq.s, &sq.g, &sq.t}) {
    if (!m->dimension_preserving()) throw Error(ErrorCode::kPreconditionFailed, "square contains a collapsing map");
    MapVerdict v = is_local_isometry(*m);
    if (!v.ok)
      throw Error(ErrorCode::kPreconditionFailed,
                  "map " + m->domain().name() + " -> " + m->codomain().name() + " is not a local isometry", {v.vertex, v.reason});
  }
  if (auto d = cell_difference(compose(sq.f, sq.t), compose(sq.s, sq.g)))
    throw Error(ErrorCode::kPreconditionFailed, "the square does not commute at " + *d);

  const CubeComplex& v = sq.f.domain();
  const CubeComplex& y = sq.t.domain();
  const CubeComplex& x = sq.t.codomain();
  const CubeComplex& z = sq.g.domain();
  FunctorialConditions out;

  PreconditionReport px = completion_preconditions(x), py = completion_preconditions(y);
  if (!px.ok) out.conditions[0] = {false, x.name() + ": " + px.failures.front()};
  else if (!py.ok) out.conditions[0] = {false, y.name() + ": " + py.failures.front()};

  WallSet wx(x), wy(y);
  std::map<int, int> wall_image;  // X wall -> Y wall mapped onto it
  std::set<int> meets;
  for (const Wall& w : wy.walls()) {
    const int xw = wx.wall_of_edge(sq.t.image(w.dual_edges.front()));
    meets.insert(xw);
    auto [it, fresh] = wall_image.emplace(xw, w.id);
    if (!fresh && out.conditions[1].ok)
      out.conditions[1] = {false, y.id(wy.wall(it->second).dual_edges.front()) + "," + y.id(w.dual_edges.front())};
  }
  for (CubeIndex yv : y.vertices()) {
    if (!out.conditions[2].ok) break;
    const CubeIndex xv = sq.t.image(yv);
    std::set<EdgeEnd> covered;
    for (const EdgeEnd& e : y.edge_ends_at(yv)) covered.insert(map_end(sq.t, e));
    for (const EdgeEnd& e : x.edge_ends_at(xv))
      if (meets.count(wx.wall_of_edge(e.edge)) && !covered.count(e)) {
        out.conditions[2] = {false, y.id(yv) + ":" + end_string(x, e)};
        break;
      }
  }
  for (CubeIndex vv : v.vertices()) {
    if (!out.conditions[3].ok) break;
    const CubeIndex yv = sq.f.image(vv), zv = sq.s.image(vv);
    std::set<std::pair<EdgeEnd, EdgeEnd>> lifted;
    for (const EdgeEnd& e : v.edge_ends_at(vv)) lifted.insert({map_end(sq.f, e), map_end(sq.s, e)});
    for (const EdgeEnd& ey : y.edge_ends_at(yv))
      for (const EdgeEnd& ez : z.edge_ends_at(zv))
        if (map_end(sq.t, ey) == map_end(sq.g, ez) && !lifted.count({ey, ez}) && out.conditions[3].ok)
          out.conditions[3] = {false, v.id(vv) + ":" + end_string(y, ey) + ":" + end_string(z, ez)};
  }
  return out;
}

std::optional<std::string> cell_difference_upto(const CubicalMap& f, const CubicalMap& g, int max_dim) {
  if (f.domain().size() != g.domain().size()) return std::string("domains differ");
  for (std::size_t ci = 0; ci < f.images().size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    if (f.domain().dim(c) > max_dim) continue;
    const CubeImage& a = f.images()[ci];
    const CubeImage& b = g.images()[ci];
    if (f.codomain().id(a.cube) != g.codomain().id(b.cube) || a.corners != b.corners) return f.domain().id(c);
  }
  return std::nullopt;
}

FunctorialResult functorial_map(const CommutingSquare& sq) {
  FunctorialConditions conds = functorial_conditions(sq);
  static const char* names[] = {"i", "ii", "iii", "iv"};
  for (std::size_t i = 0; i < 4; ++i)
    if (!conds.conditions[i].ok)
      throw Error(ErrorCode::kConditionFailed, std::string("condition (") + names[i] + ") fails",
                  {names[i], conds.conditions[i].witness});
  CompletionResult src = canonical_completion(sq.f);
  CompletionResult dst = canonical_completion(sq.g);
  const CubeComplex& c = *src.completion;
  const CubeComplex& c2 = *dst.completion;
  std::map<std::string, std::string> vmap;
  for (const auto& [cv, pr] : src.vertex_pairs) {
    const CubeIndex zv = sq.s.image(pr.first), xv = sq.t.image(pr.second);
    vmap[c.id(cv)] = sq.g.codomain().id(xv) + "@" + sq.g.domain().id(zv);
  }
  std::optional<CubicalMap> hat;
  try {
    hat = CubicalMap::from_vertex_map(src.completion, dst.completion, vmap);
  } catch (const Error& e) {
    throw Error(ErrorCode::kDiagramFailed, std::string("the vertex map does not extend: ") + e.what());
  }
  for (CubeIndex e : c.edges())
    if (src.edge_kind.at(c.id(e)) != dst.edge_kind.at(c2.id(hat->image(e))))
      throw Error(ErrorCode::kDiagramFailed, "edge " + c.id(e) + " changes kind");
  FunctorialResult out{conds, src, dst, *hat, false, 0};
  auto check = [&](const CubicalMap& lhs, const CubicalMap& rhs, const char* what) {
    if (auto d = cell_difference_upto(lhs, rhs, 2))
      throw Error(ErrorCode::kDiagramFailed, std::string(what) + " fails at " + *d);
    for (std::size_t i = 0; i < lhs.domain().size(); ++i)
      out.cells_checked += lhs.domain().dim(static_cast<CubeIndex>(i)) <= 2;
  };
  check(compose(src.inclusion, *hat), compose(sq.s, dst.inclusion), "hat j = j' s");
  check(compose(*hat, dst.retraction), compose(src.retraction, sq.s), "r' hat = s r");
  check(compose(*hat, dst.projection), compose(src.projection, sq.t), "p' hat = t p");
  out.hat_local_isometry = is_local_isometry(*hat).ok;
  return out;
}

}  // namespace cubetool
