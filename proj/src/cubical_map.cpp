#include "cubetool/cubical_map.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace cubetool {

namespace {

std::string qid(const std::string& s) { return "'" + s + "'"; }

// Checks that corner map m is an affine cube map onto all of g that agrees
// with the vertex images and with the images already fixed on the facets.
std::optional<std::string> check_image(const CubeComplex& dom, const CubeComplex& cod,
                                       const std::vector<CubeImage>& images, CubeIndex c,
                                       CubeIndex g, const CornerMap& m) {
  const int d = dom.dim(c);
  const int e = cod.dim(g);
  if (m.size() != (std::size_t{1} << d)) return "corner map has wrong size";
  const int base = m[0];
  int used = 0;
  int kept = 0;
  std::vector<int> delta(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    int dl = m[static_cast<std::size_t>(1) << a] ^ base;
    if (dl != 0) {
      if (std::popcount(static_cast<unsigned>(dl)) != 1 || (used & dl)) return "not a cube map";
      used |= dl;
      ++kept;
    }
    delta[static_cast<std::size_t>(a)] = dl;
  }
  if (kept != e) return "image dimension does not match kept axes";
  for (int p = 0; p < (1 << d); ++p) {
    int want = base;
    for (int a = 0; a < d; ++a)
      if ((p >> a) & 1) want ^= delta[static_cast<std::size_t>(a)];
    if (m[static_cast<std::size_t>(p)] != want) return "not a cube map";
    CubeIndex v = dom.corner(c, p);
    if (images[static_cast<std::size_t>(v)].cube != cod.corner(g, want)) return "corner images disagree";
  }
  for (int a = 0; a < d; ++a) {
    for (int s = 0; s < 2; ++s) {
      CubeIndex f = dom.face(c, a, s);
      const CornerMap& att = dom.attach(c, a, s);
      const CubeImage& fi = images[static_cast<std::size_t>(f)];
      Pattern pat(static_cast<std::size_t>(e), kFree);
      int all_and = ~0, all_or = 0;
      for (int q : att) {
        all_and &= m[static_cast<std::size_t>(q)];
        all_or |= m[static_cast<std::size_t>(q)];
      }
      for (int t = 0; t < e; ++t) {
        bool a1 = (all_and >> t) & 1, o1 = (all_or >> t) & 1;
        if (a1 == o1) pat[static_cast<std::size_t>(t)] = static_cast<std::int8_t>(a1);
      }
      auto r = cod.resolve(g, pat);
      if (r.cube != fi.cube) return "face " + qid(dom.id(f)) + " image mismatch";
      for (std::size_t q = 0; q < att.size(); ++q)
        if (r.corners[static_cast<std::size_t>(fi.corners[q])] != m[static_cast<std::size_t>(att[q])])
          return "face " + qid(dom.id(f)) + " frame mismatch";
    }
  }
  return std::nullopt;
}

CornerMap frame_corners(int d, const std::vector<int>& kept, const std::vector<int>& codes) {
  CornerMap m(std::size_t{1} << d);
  for (int p = 0; p < (1 << d); ++p) {
    int q = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      int code = codes[i];
      int t = code >= 0 ? code : ~code;
      int bit = ((p >> kept[i]) & 1) ^ (code < 0 ? 1 : 0);
      q |= bit << t;
    }
    m[static_cast<std::size_t>(p)] = q;
  }
  return m;
}

// Candidate axis codes in search order: permutations, then reflections.
std::vector<std::vector<int>> candidate_codes(int e) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<std::size_t>(e));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int refl = 0; refl < (1 << e); ++refl) {
      std::vector<int> codes(perm);
      for (int i = 0; i < e; ++i)
        if ((refl >> i) & 1) codes[static_cast<std::size_t>(i)] = ~codes[static_cast<std::size_t>(i)];
      out.push_back(std::move(codes));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

CubicalMap CubicalMap::derive(ComplexPtr domain, ComplexPtr codomain, const CubicalMapDescription& desc) {
  CubicalMap f(std::move(domain), std::move(codomain));
  const CubeComplex& dom = *f.domain_;
  const CubeComplex& cod = *f.codomain_;
  for (const auto& [k, v] : desc.cube_images) {
    if (!dom.find(k)) throw Error(ErrorCode::kMalformedMap, "unknown domain cube " + qid(k));
    if (!cod.find(v)) throw Error(ErrorCode::kMalformedMap, "unknown codomain cube " + qid(v));
  }
  for (const auto& [k, v] : desc.collapses)
    if (!dom.find(k)) throw Error(ErrorCode::kMalformedMap, "collapse on unknown cube " + qid(k));
  for (const auto& [k, v] : desc.axes)
    if (!dom.find(k)) throw Error(ErrorCode::kMalformedMap, "axes on unknown cube " + qid(k));
  f.images_.assign(dom.size(), {});
  for (std::size_t ci = 0; ci < dom.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    const std::string& id = dom.id(c);
    auto it = desc.cube_images.find(id);
    if (it == desc.cube_images.end()) throw Error(ErrorCode::kMalformedMap, "no image for cube " + qid(id));
    const CubeIndex g = *cod.find(it->second);
    const int d = dom.dim(c);
    const int e = cod.dim(g);
    std::vector<int> kept;
    std::set<int> collapsed;
    if (auto cit = desc.collapses.find(id); cit != desc.collapses.end()) {
      for (int a : cit->second) {
        if (a < 0 || a >= d || !collapsed.insert(a).second)
          throw Error(ErrorCode::kMalformedMap, "bad collapse axis on " + qid(id));
      }
    }
    for (int a = 0; a < d; ++a)
      if (!collapsed.count(a)) kept.push_back(a);
    if (static_cast<int>(kept.size()) != e)
      throw Error(ErrorCode::kMalformedMap, "cube " + qid(id) + " maps to " + qid(it->second) +
                                                " of dimension " + std::to_string(e) + " but keeps " +
                                                std::to_string(kept.size()) + " axes");
    if (d == 0) {
      f.images_[ci] = CubeImage{g, CornerMap{0}};
      continue;
    }
    std::vector<std::vector<int>> cands;
    if (auto ait = desc.axes.find(id); ait != desc.axes.end()) {
      if (static_cast<int>(ait->second.size()) != e)
        throw Error(ErrorCode::kMalformedMap, "axes entry of wrong length on " + qid(id));
      cands.push_back(ait->second);
    } else {
      cands = candidate_codes(e);
    }
    std::optional<std::string> last;
    bool ok = false;
    for (const auto& codes : cands) {
      std::set<int> seen;
      bool valid = true;
      for (int code : codes) {
        int t = code >= 0 ? code : ~code;
        valid = valid && t < e && seen.insert(t).second;
      }
      if (!valid) {
        last = "axes entry is not a signed permutation";
        continue;
      }
      CornerMap m = frame_corners(d, kept, codes);
      last = check_image(dom, cod, f.images_, c, g, m);
      if (!last) {
        f.images_[ci] = CubeImage{g, std::move(m)};
        ok = true;
        break;
      }
    }
    if (!ok) throw Error(ErrorCode::kMalformedMap, "cube " + qid(id) + ": " + last.value_or("no frame"));
  }
  return f;
}

CubicalMap CubicalMap::from_images(ComplexPtr domain, ComplexPtr codomain, std::vector<CubeImage> images) {
  CubicalMap f(std::move(domain), std::move(codomain));
  const CubeComplex& dom = *f.domain_;
  const CubeComplex& cod = *f.codomain_;
  if (images.size() != dom.size()) throw Error(ErrorCode::kMalformedMap, "image table has wrong size");
  f.images_ = std::move(images);
  for (std::size_t ci = 0; ci < dom.size(); ++ci) {
    const CubeImage& im = f.images_[ci];
    if (im.cube < 0 || static_cast<std::size_t>(im.cube) >= cod.size())
      throw Error(ErrorCode::kMalformedMap, "cube " + qid(dom.id(static_cast<CubeIndex>(ci))) + " has no image");
    if (dom.dim(static_cast<CubeIndex>(ci)) == 0) {
      if (cod.dim(im.cube) != 0) throw Error(ErrorCode::kMalformedMap, "vertex image is not a vertex");
      continue;
    }
    if (auto err = check_image(dom, cod, f.images_, static_cast<CubeIndex>(ci), im.cube, im.corners))
      throw Error(ErrorCode::kMalformedMap, "cube " + qid(dom.id(static_cast<CubeIndex>(ci))) + ": " + *err);
  }
  return f;
}

CubicalMap CubicalMap::from_vertex_map(ComplexPtr domain, ComplexPtr codomain,
                                       const std::map<std::string, std::string>& vertex_images) {
  CubicalMap f(std::move(domain), std::move(codomain));
  const CubeComplex& dom = *f.domain_;
  const CubeComplex& cod = *f.codomain_;
  f.images_.assign(dom.size(), {});
  std::vector<int> all(static_cast<std::size_t>(std::max(dom.dim(), 0)));
  for (std::size_t ci = 0; ci < dom.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    const int d = dom.dim(c);
    if (d == 0) {
      auto it = vertex_images.find(dom.id(c));
      if (it == vertex_images.end()) throw Error(ErrorCode::kMalformedMap, "no image for vertex " + qid(dom.id(c)));
      auto g = cod.find(it->second);
      if (!g || cod.dim(*g) != 0) throw Error(ErrorCode::kMalformedMap, "image of " + qid(dom.id(c)) + " is not a vertex");
      f.images_[ci] = CubeImage{*g, CornerMap{0}};
      continue;
    }
    std::vector<int> kept(static_cast<std::size_t>(d));
    std::iota(kept.begin(), kept.end(), 0);
    const CubeIndex v0 = f.images_[static_cast<std::size_t>(dom.corner(c, 0))].cube;
    bool ok = false;
    const auto cands = candidate_codes(d);
    for (const Incidence& inc : cod.incidences(v0)) {
      if (cod.dim(inc.cube) != d) continue;
      for (const auto& codes : cands) {
        CornerMap m = frame_corners(d, kept, codes);
        if (m[0] != inc.corner) continue;
        if (!check_image(dom, cod, f.images_, c, inc.cube, m)) {
          f.images_[ci] = CubeImage{inc.cube, std::move(m)};
          ok = true;
          break;
        }
      }
      if (ok) break;
    }
    if (!ok) throw Error(ErrorCode::kMalformedMap, "no codomain cube matches " + qid(dom.id(c)));
  }
  return f;
}

CubicalMap CubicalMap::identity(ComplexPtr x) {
  CubicalMap f(x, x);
  f.images_.resize(x->size());
  for (std::size_t ci = 0; ci < x->size(); ++ci) {
    CornerMap m(std::size_t{1} << x->dim(static_cast<CubeIndex>(ci)));
    std::iota(m.begin(), m.end(), 0);
    f.images_[ci] = CubeImage{static_cast<CubeIndex>(ci), std::move(m)};
  }
  return f;
}

int CubicalMap::axis_image(CubeIndex c, int axis) const {
  const CornerMap& m = corners(c);
  int dl = m[std::size_t{1} << axis] ^ m[0];
  if (dl == 0) return kCollapsed;
  int t = std::countr_zero(static_cast<unsigned>(dl));
  return ((m[0] >> t) & 1) ? ~t : t;
}

bool CubicalMap::dimension_preserving() const {
  for (std::size_t ci = 0; ci < images_.size(); ++ci)
    if (domain_->dim(static_cast<CubeIndex>(ci)) != codomain_->dim(images_[ci].cube)) return false;
  return true;
}

CubicalMapDescription CubicalMap::description() const {
  CubicalMapDescription d;
  d.domain = domain_->name();
  d.codomain = codomain_->name();
  for (std::size_t ci = 0; ci < images_.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    const std::string& id = domain_->id(c);
    d.cube_images[id] = codomain_->id(images_[ci].cube);
    std::vector<int> col, codes;
    for (int a = 0; a < domain_->dim(c); ++a) {
      int code = axis_image(c, a);
      if (code == kCollapsed) col.push_back(a);
      else codes.push_back(code);
    }
    if (!col.empty()) d.collapses[id] = col;
    bool plain = true;
    for (std::size_t i = 0; i < codes.size(); ++i) plain = plain && codes[i] == static_cast<int>(i);
    if (!plain) d.axes[id] = codes;
  }
  return d;
}

CubicalMap compose(const CubicalMap& f, const CubicalMap& g) {
  if (f.codomain().size() != g.domain().size() || f.codomain().name() != g.domain().name())
    throw Error(ErrorCode::kMalformedMap, "maps are not composable");
  std::vector<CubeImage> images(f.domain().size());
  for (std::size_t ci = 0; ci < images.size(); ++ci) {
    const CubeImage& a = f.images()[ci];
    const CubeImage& b = g.images()[static_cast<std::size_t>(a.cube)];
    CornerMap m(a.corners.size());
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = b.corners[static_cast<std::size_t>(a.corners[p])];
    images[ci] = CubeImage{b.cube, std::move(m)};
  }
  return CubicalMap::from_images(f.domain_ptr(), g.codomain_ptr(), std::move(images));
}

std::optional<std::string> cell_difference(const CubicalMap& f, const CubicalMap& g) {
  if (f.domain().size() != g.domain().size()) return std::string("domains differ");
  for (std::size_t ci = 0; ci < f.images().size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    if (f.domain().id(c) != g.domain().id(c)) return std::string("domains differ");
    const CubeImage& a = f.images()[ci];
    const CubeImage& b = g.images()[ci];
    if (f.codomain().id(a.cube) != g.codomain().id(b.cube) || a.corners != b.corners)
      return f.domain().id(c);
  }
  return std::nullopt;
}

std::string edge_end_string(const CubeComplex& x, const EdgeEnd& e) {
  return x.id(e.edge) + ":" + std::to_string(e.end);
}

LinkImage link_image(const CubicalMap& f, CubeIndex v) {
  LinkImage li;
  li.domain_link = link(f.domain(), v);
  li.codomain_link = link(f.codomain(), f.image(v));
  for (const EdgeEnd& e : li.domain_link.link_vertices) {
    const CubeImage& im = f.images()[static_cast<std::size_t>(e.edge)];
    if (f.codomain().dim(im.cube) != 1) {
      li.vertex_map.push_back(-1);
      continue;
    }
    li.vertex_map.push_back(li.codomain_link.index_of(EdgeEnd{im.cube, im.corners[static_cast<std::size_t>(e.end)]}));
  }
  for (const LinkSimplex& s : li.domain_link.simplices) {
    const CubeImage& im = f.images()[static_cast<std::size_t>(s.cube)];
    int found = -1;
    const int corner = im.corners[static_cast<std::size_t>(s.corner)];
    for (std::size_t t = 0; t < li.codomain_link.simplices.size(); ++t) {
      const LinkSimplex& cs = li.codomain_link.simplices[t];
      if (cs.cube == im.cube && cs.corner == corner) {
        found = static_cast<int>(t);
        break;
      }
    }
    li.simplex_map.push_back(found);
  }
  return li;
}

MapVerdict is_local_isometry(const CubicalMap& f) {
  if (!f.dimension_preserving())
    throw Error(ErrorCode::kNotDimensionPreserving, "map collapses some cube");
  const CubeComplex& dom = f.domain();
  const CubeComplex& cod = f.codomain();
  for (CubeIndex v : dom.vertices()) {
    LinkImage li = link_image(f, v);
    MapVerdict out;
    out.ok = false;
    out.vertex = dom.id(v);
    std::map<int, int> seen;
    for (std::size_t i = 0; i < li.vertex_map.size(); ++i) {
      auto [it, fresh] = seen.emplace(li.vertex_map[i], static_cast<int>(i));
      if (!fresh) {
        out.reason = "link vertices collide";
        out.simplex = {edge_end_string(dom, li.domain_link.link_vertices[static_cast<std::size_t>(it->second)]),
                       edge_end_string(dom, li.domain_link.link_vertices[i])};
        return out;
      }
    }
    std::set<int> simp;
    for (int t : li.simplex_map) {
      if (t < 0 || !simp.insert(t).second) {
        out.reason = "link simplices collide";
        return out;
      }
    }
    for (std::size_t t = 0; t < li.codomain_link.simplices.size(); ++t) {
      const LinkSimplex& cs = li.codomain_link.simplices[t];
      bool inside = std::all_of(cs.vertices.begin(), cs.vertices.end(),
                                [&](int u) { return seen.count(u) > 0; });
      if (inside && !simp.count(static_cast<int>(t))) {
        out.reason = "image of link is not full";
        for (int u : cs.vertices)
          out.simplex.push_back(edge_end_string(cod, li.codomain_link.link_vertices[static_cast<std::size_t>(u)]));
        return out;
      }
    }
  }
  return {};
}

CoveringReport verify_covering(const CubicalMap& p) {
  const CubeComplex& dom = p.domain();
  const CubeComplex& cod = p.codomain();
  auto fail = [&](const std::string& vertex, const std::string& why) {
    throw Error(ErrorCode::kNotCovering, "not a covering at " + qid(vertex) + ": " + why, {vertex, why});
  };
  if (!p.dimension_preserving()) fail(dom.size() ? dom.id(0) : std::string(), "map collapses some cube");
  for (CubeIndex v : dom.vertices()) {
    LinkImage li = link_image(p, v);
    std::vector<int> vm = li.vertex_map;
    std::sort(vm.begin(), vm.end());
    std::vector<int> want(li.codomain_link.link_vertices.size());
    std::iota(want.begin(), want.end(), 0);
    if (vm != want) fail(dom.id(v), "link vertices not mapped bijectively");
    std::vector<int> sm = li.simplex_map;
    std::sort(sm.begin(), sm.end());
    std::vector<int> wants(li.codomain_link.simplices.size());
    std::iota(wants.begin(), wants.end(), 0);
    if (sm != wants) fail(dom.id(v), "link simplices not mapped bijectively");
  }
  std::vector<int> fiber(cod.size(), 0);
  for (CubeIndex v : dom.vertices()) fiber[static_cast<std::size_t>(p.image(v))]++;
  int ncomp = 0;
  std::vector<int> comp = vertex_components(cod, &ncomp);
  CoveringReport rep;
  rep.component_degrees.assign(static_cast<std::size_t>(ncomp), -1);
  for (CubeIndex b : cod.vertices()) {
    int& d = rep.component_degrees[static_cast<std::size_t>(comp[static_cast<std::size_t>(b)])];
    if (d < 0) d = fiber[static_cast<std::size_t>(b)];
    else if (d != fiber[static_cast<std::size_t>(b)]) fail(cod.id(b), "fiber size differs within a component");
  }
  rep.degree = rep.component_degrees.empty() ? 0 : rep.component_degrees.front();
  for (int d : rep.component_degrees)
    if (d != rep.degree) rep.degree = -1;
  return rep;
}

}  // namespace cubetool
