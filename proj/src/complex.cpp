#include "cubetool/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace cubetool {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedComplex: return "MalformedComplex";
    case ErrorCode::kMalformedMap: return "MalformedMap";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kUnknownWall: return "UnknownWall";
    case ErrorCode::kUnknownCoset: return "UnknownCoset";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kUnknownCorpusItem: return "UnknownCorpusItem";
    case ErrorCode::kDimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorCode::kNotDimensionPreserving: return "NotDimensionPreserving";
    case ErrorCode::kNotNpc: return "NotNPC";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kRequiresTwoSided: return "RequiresTwoSided";
    case ErrorCode::kOneSidedWall: return "OneSidedWall";
    case ErrorCode::kNotConvex: return "NotConvex";
    case ErrorCode::kAmbiguous: return "Ambiguous";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kCoveringCheckFailed: return "CoveringCheckFailed";
    case ErrorCode::kNotCovering: return "NotCovering";
    case ErrorCode::kConditionFailed: return "ConditionFailed";
    case ErrorCode::kDiagramFailed: return "DiagramFailed";
    case ErrorCode::kConditionViolated: return "ConditionViolated";
    case ErrorCode::kOracleInconsistent: return "OracleInconsistent";
    case ErrorCode::kBallBudgetExceeded: return "BallBudgetExceeded";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNotSpanningTree: return "NotSpanningTree";
    case ErrorCode::kNotACircuit: return "NotACircuit";
    case ErrorCode::kUnbalanced: return "Unbalanced";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool cube_less(const Cube& a, const Cube& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.id < b.id;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// Checks one orient entry: a signed permutation of dim-1 axes.
bool orient_entry_ok(int dim, const std::vector<int>& e) {
  if (static_cast<int>(e.size()) != dim - 1) return false;
  std::vector<bool> seen(static_cast<std::size_t>(std::max(dim - 1, 0)), false);
  for (int code : e) {
    int k = code >= 0 ? code : ~code;
    if (k < 0 || k >= dim - 1 || seen[static_cast<std::size_t>(k)]) return false;
    seen[static_cast<std::size_t>(k)] = true;
  }
  return true;
}

}  // namespace

std::vector<int> identity_orient(int dim) {
  std::vector<int> e(static_cast<std::size_t>(std::max(dim - 1, 0)));
  for (std::size_t m = 0; m < e.size(); ++m) e[m] = static_cast<int>(m);
  return e;
}

bool is_identity_orient(const std::vector<int>& orient) {
  for (std::size_t m = 0; m < orient.size(); ++m)
    if (orient[m] != static_cast<int>(m)) return false;
  return true;
}

CornerMap facet_corner_map(int dim, int axis, int side, const std::vector<int>& orient) {
  std::vector<int> rest;
  for (int i = 0; i < dim; ++i)
    if (i != axis) rest.push_back(i);
  const int fd = dim - 1;
  CornerMap out(std::size_t{1} << fd);
  for (int q = 0; q < (1 << fd); ++q) {
    int p = side << axis;
    for (int m = 0; m < fd; ++m) {
      int code = orient.empty() ? m : orient[static_cast<std::size_t>(m)];
      int k = code >= 0 ? code : ~code;
      int bit = ((q >> m) & 1) ^ (code < 0 ? 1 : 0);
      p |= bit << rest[static_cast<std::size_t>(k)];
    }
    out[static_cast<std::size_t>(q)] = p;
  }
  return out;
}

std::vector<std::string> CubeComplex::violations(const CubeComplexDescription& raw) {
  std::vector<std::string> out;
  std::unordered_map<std::string, const Cube*> ids;
  if (raw.dim_cap < 0) out.push_back("dim_cap must be non-negative");
  for (const Cube& c : raw.cubes) {
    if (c.id.empty()) out.push_back("empty cube id");
    if (!ids.emplace(c.id, &c).second) out.push_back("duplicate cube id " + quoted(c.id));
    if (c.dim < 0) out.push_back("negative dimension on " + quoted(c.id));
    if (c.dim > raw.dim_cap)
      out.push_back("dimension over cap: " + quoted(c.id) + " has dim " + std::to_string(c.dim) +
                    " > " + std::to_string(raw.dim_cap));
  }
  if (!out.empty()) return out;

  for (const Cube& c : raw.cubes) {
    const std::string& id = c.id;
    if (c.dim > 20) {
      out.push_back("dimension too large on " + quoted(id));
      continue;
    }
    if (c.faces.size() != static_cast<std::size_t>(2 * c.dim)) {
      out.push_back("cube " + quoted(id) + " needs " + std::to_string(2 * c.dim) + " faces, has " +
                    std::to_string(c.faces.size()));
      continue;
    }
    if (c.corners.size() != (std::size_t{1} << c.dim)) {
      out.push_back("cube " + quoted(id) + " needs " + std::to_string(1 << c.dim) +
                    " corners, has " + std::to_string(c.corners.size()));
      continue;
    }
    if (c.dim == 0 && c.corners[0] != id) {
      out.push_back("vertex " + quoted(id) + " must be its own corner");
      continue;
    }
    if (!c.orient.empty()) {
      if (c.orient.size() != c.faces.size()) {
        out.push_back("cube " + quoted(id) + " orient must have one entry per face");
        continue;
      }
      bool ok = true;
      for (const auto& e : c.orient) ok = ok && orient_entry_ok(c.dim, e);
      if (!ok) {
        out.push_back("cube " + quoted(id) + " has a malformed orient entry");
        continue;
      }
    }
    bool refs_ok = true;
    for (std::size_t k = 0; k < c.corners.size(); ++k) {
      auto it = ids.find(c.corners[k]);
      if (it == ids.end() || it->second->dim != 0) {
        out.push_back("dangling corner reference: cube " + quoted(id) + " corner " +
                      std::to_string(k) + " -> " + quoted(c.corners[k]));
        refs_ok = false;
      }
    }
    for (std::size_t k = 0; k < c.faces.size(); ++k) {
      auto it = ids.find(c.faces[k]);
      if (it == ids.end()) {
        out.push_back("dangling face reference: cube " + quoted(id) + " face " +
                      std::to_string(k) + " -> " + quoted(c.faces[k]));
        refs_ok = false;
      } else if (it->second->dim != c.dim - 1) {
        out.push_back("face dimension mismatch: cube " + quoted(id) + " face " +
                      std::to_string(k) + " -> " + quoted(c.faces[k]));
        refs_ok = false;
      }
    }
    if (!refs_ok) continue;
    for (int axis = 0; axis < c.dim; ++axis) {
      for (int side = 0; side < 2; ++side) {
        const std::size_t fi = static_cast<std::size_t>(2 * axis + side);
        const Cube& f = *ids.at(c.faces[fi]);
        if (f.corners.size() != (std::size_t{1} << f.dim)) continue;  // reported on f
        CornerMap m = facet_corner_map(c.dim, axis, side,
                                       c.orient.empty() ? std::vector<int>{} : c.orient[fi]);
        for (std::size_t q = 0; q < m.size(); ++q) {
          if (f.corners[q] != c.corners[static_cast<std::size_t>(m[q])]) {
            out.push_back("corner inconsistency: cube " + quoted(id) + " face (" +
                          std::to_string(axis) + (side ? ",+)" : ",-)") + " = " +
                          quoted(f.id) + " corner " + std::to_string(q));
            break;
          }
        }
      }
    }
  }
  return out;
}

CubeComplex CubeComplex::validate(CubeComplexDescription raw) {
  for (const Cube& c : raw.cubes)
    if (c.dim > raw.dim_cap && raw.dim_cap >= 0)
      throw Error(ErrorCode::kDimensionCapExceeded,
                  "cube " + quoted(c.id) + " has dim " + std::to_string(c.dim) +
                      " above dim_cap " + std::to_string(raw.dim_cap));
  auto v = violations(raw);
  if (!v.empty()) throw Error(ErrorCode::kMalformedComplex, v.front(), v);

  CubeComplex x;
  x.name_ = std::move(raw.name);
  x.dim_cap_ = raw.dim_cap;
  x.cubes_ = std::move(raw.cubes);
  std::sort(x.cubes_.begin(), x.cubes_.end(), cube_less);
  for (Cube& c : x.cubes_) {
    bool identity = true;
    for (const auto& e : c.orient) identity = identity && is_identity_orient(e);
    if (identity) c.orient.clear();
  }
  x.build_derived();
  return x;
}

void CubeComplex::build_derived() {
  const std::size_t n = cubes_.size();
  max_dim_ = cubes_.empty() ? -1 : cubes_.back().dim;
  by_id_.clear();
  all_indices_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_id_.emplace(cubes_[i].id, static_cast<CubeIndex>(i));
    all_indices_[i] = static_cast<CubeIndex>(i);
  }
  dim_offsets_.assign(static_cast<std::size_t>(max_dim_ + 2), 0);
  for (const Cube& c : cubes_) dim_offsets_[static_cast<std::size_t>(c.dim + 1)]++;
  for (std::size_t d = 1; d < dim_offsets_.size(); ++d) dim_offsets_[d] += dim_offsets_[d - 1];

  face_index_.assign(n, {});
  attach_.assign(n, {});
  corner_index_.assign(n, {});
  cofaces_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const Cube& c = cubes_[i];
    for (std::size_t k = 0; k < c.faces.size(); ++k) {
      CubeIndex f = by_id_.at(c.faces[k]);
      face_index_[i].push_back(f);
      auto& cf = cofaces_[static_cast<std::size_t>(f)];
      if (cf.empty() || cf.back() != static_cast<CubeIndex>(i)) cf.push_back(static_cast<CubeIndex>(i));
      attach_[i].push_back(facet_corner_map(c.dim, static_cast<int>(k / 2), static_cast<int>(k % 2),
                                            c.orient.empty() ? std::vector<int>{} : c.orient[k]));
    }
    for (const auto& v : c.corners) corner_index_[i].push_back(by_id_.at(v));
  }

  edge_ends_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const int d = cubes_[i].dim;
    if (d == 0) continue;
    auto& ends = edge_ends_[i];
    ends.resize(static_cast<std::size_t>(d) << d);
    for (int pos = 0; pos < (1 << d); ++pos) {
      for (int a = 0; a < d; ++a) {
        Pattern p(static_cast<std::size_t>(d));
        for (int b = 0; b < d; ++b) p[static_cast<std::size_t>(b)] = static_cast<std::int8_t>((pos >> b) & 1);
        p[static_cast<std::size_t>(a)] = kFree;
        Resolved r = resolve(static_cast<CubeIndex>(i), p);
        ends[static_cast<std::size_t>(pos * d + a)] = EdgeEnd{r.cube, r.corners[0] == pos ? 0 : 1};
      }
    }
  }

  incidences_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (cubes_[i].dim == 0) continue;
    for (std::size_t pos = 0; pos < corner_index_[i].size(); ++pos)
      incidences_[static_cast<std::size_t>(corner_index_[i][pos])].push_back(
          Incidence{static_cast<CubeIndex>(i), static_cast<int>(pos)});
  }
}

CubeComplexDescription CubeComplex::description() const {
  return CubeComplexDescription{name_, dim_cap_, cubes_};
}

std::optional<CubeIndex> CubeComplex::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

CubeIndex CubeComplex::vertex_index(std::string_view id) const {
  auto c = find(id);
  if (!c || dim(*c) != 0) throw Error(ErrorCode::kUnknownVertex, "unknown vertex '" + std::string(id) + "'");
  return *c;
}

std::span<const CubeIndex> CubeComplex::cubes_of_dim(int d) const {
  if (d < 0 || d > max_dim_) return {};
  const auto lo = dim_offsets_[static_cast<std::size_t>(d)];
  const auto hi = dim_offsets_[static_cast<std::size_t>(d + 1)];
  return std::span<const CubeIndex>(all_indices_.data() + lo, hi - lo);
}

CubeComplex::Resolved CubeComplex::resolve(CubeIndex c, const Pattern& pattern) const {
  const int d = dim(c);
  int axis = -1;
  for (int i = 0; i < d; ++i)
    if (pattern[static_cast<std::size_t>(i)] != kFree) {
      axis = i;
      break;
    }
  if (axis < 0) {
    Resolved r{c, CornerMap(std::size_t{1} << d)};
    for (int q = 0; q < (1 << d); ++q) r.corners[static_cast<std::size_t>(q)] = q;
    return r;
  }
  const int side = pattern[static_cast<std::size_t>(axis)];
  const Cube& cb = cube(c);
  const std::size_t fi = static_cast<std::size_t>(2 * axis + side);
  std::vector<int> rest;
  for (int i = 0; i < d; ++i)
    if (i != axis) rest.push_back(i);
  Pattern sub(static_cast<std::size_t>(d - 1));
  for (int m = 0; m < d - 1; ++m) {
    int code = cb.orient.empty() ? m : cb.orient[fi][static_cast<std::size_t>(m)];
    int k = code >= 0 ? code : ~code;
    std::int8_t v = pattern[static_cast<std::size_t>(rest[static_cast<std::size_t>(k)])];
    if (v != kFree && code < 0) v = static_cast<std::int8_t>(1 - v);
    sub[static_cast<std::size_t>(m)] = v;
  }
  Resolved inner = resolve(face_index_[static_cast<std::size_t>(c)][fi], sub);
  const CornerMap& a = attach_[static_cast<std::size_t>(c)][fi];
  for (int& q : inner.corners) q = a[static_cast<std::size_t>(q)];
  return inner;
}

std::vector<EdgeEnd> CubeComplex::edge_ends_at(CubeIndex v) const {
  std::vector<EdgeEnd> out;
  for (const Incidence& inc : incidences(v))
    if (dim(inc.cube) == 1) out.push_back(EdgeEnd{inc.cube, inc.corner});
  std::sort(out.begin(), out.end());
  return out;
}

// ---- links ---------------------------------------------------------------

int VertexLink::index_of(const EdgeEnd& e) const {
  auto it = std::lower_bound(link_vertices.begin(), link_vertices.end(), e);
  if (it == link_vertices.end() || !(*it == e)) return -1;
  return static_cast<int>(it - link_vertices.begin());
}

bool VertexLink::adjacent(int a, int b) const {
  for (const LinkSimplex& s : simplices) {
    if (s.vertices.size() != 2) continue;
    if ((s.vertices[0] == a && s.vertices[1] == b) || (s.vertices[0] == b && s.vertices[1] == a))
      return true;
  }
  return false;
}

VertexLink link(const CubeComplex& x, CubeIndex v) {
  if (v < 0 || static_cast<std::size_t>(v) >= x.size() || x.dim(v) != 0)
    throw Error(ErrorCode::kUnknownVertex, "not a vertex index");
  VertexLink lk;
  lk.vertex = v;
  lk.link_vertices = x.edge_ends_at(v);
  for (const Incidence& inc : x.incidences(v)) {
    LinkSimplex s{inc.cube, inc.corner, {}};
    for (int a = 0; a < x.dim(inc.cube); ++a)
      s.vertices.push_back(lk.index_of(x.edge_end(inc.cube, inc.corner, a)));
    lk.simplices.push_back(std::move(s));
  }
  return lk;
}

VertexLink link(const CubeComplex& x, std::string_view v) { return link(x, x.vertex_index(v)); }

const char* npc_failure_name(NpcFailure f) {
  switch (f) {
    case NpcFailure::kNone: return "none";
    case NpcFailure::kRepeatedVertex: return "repeated_vertex";
    case NpcFailure::kDuplicateSimplex: return "duplicate_simplex";
    case NpcFailure::kEmptyClique: return "empty_clique";
  }
  return "unknown";
}

NpcVerdict vertex_npc(const CubeComplex& x, const VertexLink& lk) {
  (void)x;
  NpcVerdict out;
  auto fail = [&](NpcFailure f, const std::vector<int>& vs) {
    out.npc = false;
    out.failure = f;
    out.vertex = lk.vertex;
    for (int i : vs) out.witness.push_back(lk.link_vertices[static_cast<std::size_t>(i)]);
    return out;
  };
  std::set<std::vector<int>> simplices;
  for (const LinkSimplex& s : lk.simplices) {
    std::vector<int> vs = s.vertices;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return fail(NpcFailure::kRepeatedVertex, vs);
    if (!simplices.insert(vs).second) return fail(NpcFailure::kDuplicateSimplex, vs);
  }
  const std::size_t n = lk.link_vertices.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& s : simplices)
    if (s.size() == 2) {
      adj[static_cast<std::size_t>(s[0])][static_cast<std::size_t>(s[1])] = true;
      adj[static_cast<std::size_t>(s[1])][static_cast<std::size_t>(s[0])] = true;
    }
  // Every clique is a simplex plus a larger adjacent vertex, by induction.
  for (const auto& s : simplices) {
    if (s.size() < 2) continue;
    for (int u = s.back() + 1; u < static_cast<int>(n); ++u) {
      bool all = true;
      for (int w : s) all = all && adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(u)];
      if (!all) continue;
      std::vector<int> t = s;
      t.push_back(u);
      if (!simplices.count(t)) return fail(NpcFailure::kEmptyClique, t);
    }
  }
  return out;
}

NpcVerdict is_npc(const CubeComplex& x) {
  for (CubeIndex v : x.vertices()) {
    NpcVerdict r = vertex_npc(x, link(x, v));
    if (!r.npc) return r;
  }
  return {};
}

// ---- patterns ------------------------------------------------------------

std::vector<Pattern> all_patterns(int dim) {
  std::vector<Pattern> out;
  int total = 1;
  for (int i = 0; i < dim; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    Pattern p(static_cast<std::size_t>(dim));
    int c = code;
    for (int i = dim - 1; i >= 0; --i) {
      int t = c % 3;
      c /= 3;
      p[static_cast<std::size_t>(i)] = t == 0 ? std::int8_t{0} : t == 1 ? std::int8_t{1} : kFree;
    }
    out.push_back(std::move(p));
  }
  auto nfree = [](const Pattern& p) { return std::count(p.begin(), p.end(), kFree); };
  std::stable_sort(out.begin(), out.end(),
                   [&](const Pattern& a, const Pattern& b) { return nfree(a) < nfree(b); });
  return out;
}

std::string pattern_string(const Pattern& p) {
  std::string s;
  for (auto v : p) s.push_back(v == kFree ? '*' : static_cast<char>('0' + v));
  return s;
}

// ---- subdivision ---------------------------------------------------------

std::string subdivision_cube_id(const std::string& cube, const Pattern& fixed) {
  bool any = std::any_of(fixed.begin(), fixed.end(), [](std::int8_t v) { return v != kFree; });
  if (!any) return cube;
  return cube + "|" + pattern_string(fixed);
}

Subdivision barycentric_subdivision(const CubeComplex& x) {
  CubeComplexDescription desc;
  desc.name = x.name() + ".subdivided";
  desc.dim_cap = x.dim_cap();
  std::map<std::string, std::pair<std::string, std::string>> corr;

  for (std::size_t ci = 0; ci < x.size(); ++ci) {
    const CubeIndex c = static_cast<CubeIndex>(ci);
    const Cube& cb = x.cube(c);
    const int d = cb.dim;
    for (const Pattern& pi : all_patterns(d)) {
      std::vector<int> fixed;
      for (int i = 0; i < d; ++i)
        if (pi[static_cast<std::size_t>(i)] != kFree) fixed.push_back(i);
      const int k = static_cast<int>(fixed.size());
      Cube nc;
      nc.id = subdivision_cube_id(cb.id, pi);
      nc.dim = k;
      corr[nc.id] = {cb.id, pattern_string(pi)};
      for (int q = 0; q < (1 << k); ++q) {
        Pattern sub(static_cast<std::size_t>(d), kFree);
        for (int m = 0; m < k; ++m)
          if ((q >> m) & 1) sub[static_cast<std::size_t>(fixed[static_cast<std::size_t>(m)])] = pi[static_cast<std::size_t>(fixed[static_cast<std::size_t>(m)])];
        nc.corners.push_back(x.id(x.resolve(c, sub).cube));
      }
      bool plain = true;
      std::vector<std::vector<int>> orient;
      for (int m = 0; m < k; ++m) {
        const int axis = fixed[static_cast<std::size_t>(m)];
        // Side 0: the new axis sits at the centre of c.
        Pattern freed = pi;
        freed[static_cast<std::size_t>(axis)] = kFree;
        nc.faces.push_back(subdivision_cube_id(cb.id, freed));
        orient.push_back(identity_orient(k));
        // Side 1: the cell lies in the facet of c at the fixed end.
        const int side = pi[static_cast<std::size_t>(axis)];
        const std::size_t fi = static_cast<std::size_t>(2 * axis + side);
        const CubeIndex g = x.face(c, axis, side);
        std::vector<int> rest;
        for (int i = 0; i < d; ++i)
          if (i != axis) rest.push_back(i);
        Pattern pg(static_cast<std::size_t>(d - 1));
        std::vector<int> g_to_c(static_cast<std::size_t>(d - 1));
        for (int mm = 0; mm < d - 1; ++mm) {
          int code = cb.orient.empty() ? mm : cb.orient[fi][static_cast<std::size_t>(mm)];
          int kk = code >= 0 ? code : ~code;
          int caxis = rest[static_cast<std::size_t>(kk)];
          g_to_c[static_cast<std::size_t>(mm)] = caxis;
          std::int8_t v = pi[static_cast<std::size_t>(caxis)];
          if (v != kFree && code < 0) v = static_cast<std::int8_t>(1 - v);
          pg[static_cast<std::size_t>(mm)] = v;
        }
        nc.faces.push_back(subdivision_cube_id(x.id(g), pg));
        // Face axes are the fixed axes of pg in order; parent remaining axes
        // are the new axes other than m, in order.
        std::vector<int> entry;
        for (int mm = 0; mm < d - 1; ++mm) {
          if (pg[static_cast<std::size_t>(mm)] == kFree) continue;
          int caxis = g_to_c[static_cast<std::size_t>(mm)];
          int l = static_cast<int>(std::find(fixed.begin(), fixed.end(), caxis) - fixed.begin());
          entry.push_back(l < m ? l : l - 1);
        }
        if (!is_identity_orient(entry)) plain = false;
        orient.push_back(std::move(entry));
      }
      if (!plain) nc.orient = std::move(orient);
      desc.cubes.push_back(std::move(nc));
    }
  }
  return Subdivision{CubeComplex::validate(std::move(desc)), std::move(corr)};
}

// ---- flag completion -----------------------------------------------------

namespace {

struct Frame {
  int n = 0;
  std::vector<std::string> faces;
  std::vector<std::vector<int>> orient;
  std::vector<std::string> corners;
};

// Orient entry and corner for the facet carried by simplex (cube, pos), whose
// axes run along clique members; `axis` is the fixed new axis.
std::vector<int> facet_orient(const CubeComplex& x, CubeIndex cube, int pos, int axis,
                              const std::vector<int>& member_axis) {
  std::vector<int> entry;
  for (int m = 0; m < x.dim(cube); ++m) {
    int a = member_axis[static_cast<std::size_t>(m)];
    int k = a < axis ? a : a - 1;
    entry.push_back(((pos >> m) & 1) ? ~k : k);
  }
  return entry;
}

std::optional<Frame> frame_at(const CubeComplex& x, const VertexLink& lk,
                              const std::map<std::vector<int>, std::size_t>& simplex_of,
                              const std::vector<int>& clique) {
  const int n = static_cast<int>(clique.size());
  Frame fr;
  fr.n = n;
  fr.faces.assign(static_cast<std::size_t>(2 * n), {});
  fr.orient.assign(static_cast<std::size_t>(2 * n), {});
  std::vector<std::string> corners(std::size_t{1} << n);

  // Facets through corner 0.
  std::vector<std::vector<EdgeEnd>> far_ends(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<int> sub;
    for (int a = 0; a < n; ++a)
      if (a != k) sub.push_back(clique[static_cast<std::size_t>(a)]);
    auto it = simplex_of.find(sub);
    if (it == simplex_of.end()) return std::nullopt;
    const LinkSimplex& s = lk.simplices[it->second];
    std::vector<int> member_axis;
    for (int lv : s.vertices)
      member_axis.push_back(static_cast<int>(std::find(clique.begin(), clique.end(), lv) - clique.begin()));
    fr.faces[static_cast<std::size_t>(2 * k)] = x.id(s.cube);
    fr.orient[static_cast<std::size_t>(2 * k)] = facet_orient(x, s.cube, s.corner, k, member_axis);
  }
  // Facets through the far end of each clique edge. The edge parallel to
  // axis j at that corner comes from the square on axes {j,k} at corner 0.
  for (int k = 0; k < n; ++k) {
    const EdgeEnd ek = lk.link_vertices[static_cast<std::size_t>(clique[static_cast<std::size_t>(k)])];
    const CubeIndex w = x.corner(ek.edge, 1 - ek.end);
    std::vector<EdgeEnd> ends;
    std::vector<int> axis_of_end;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      std::vector<int> pair{clique[static_cast<std::size_t>(std::min(j, k))],
                            clique[static_cast<std::size_t>(std::max(j, k))]};
      auto it = simplex_of.find(pair);
      if (it == simplex_of.end()) return std::nullopt;
      const LinkSimplex& sq = lk.simplices[it->second];
      int ak = sq.vertices[0] == clique[static_cast<std::size_t>(k)] ? 0 : 1;
      int aj = 1 - ak;
      int across = sq.corner ^ (1 << ak);
      ends.push_back(x.edge_end(sq.cube, across, aj));
      axis_of_end.push_back(j);
    }
    VertexLink lw = link(x, w);
    std::vector<int> target;
    for (const EdgeEnd& e : ends) target.push_back(lw.index_of(e));
    std::vector<int> sorted = target;
    std::sort(sorted.begin(), sorted.end());
    const LinkSimplex* found = nullptr;
    for (const LinkSimplex& s : lw.simplices) {
      std::vector<int> vs = s.vertices;
      std::sort(vs.begin(), vs.end());
      if (vs == sorted) {
        found = &s;
        break;
      }
    }
    if (!found) return std::nullopt;
    std::vector<int> member_axis;
    for (int lv : found->vertices)
      member_axis.push_back(axis_of_end[static_cast<std::size_t>(std::find(target.begin(), target.end(), lv) - target.begin())]);
    fr.faces[static_cast<std::size_t>(2 * k + 1)] = x.id(found->cube);
    fr.orient[static_cast<std::size_t>(2 * k + 1)] = facet_orient(x, found->cube, found->corner, k, member_axis);
  }
  // Corners, checked for agreement across all facets.
  for (int k = 0; k < n; ++k) {
    for (int side = 0; side < 2; ++side) {
      const std::size_t fi = static_cast<std::size_t>(2 * k + side);
      CubeIndex f = *x.find(fr.faces[fi]);
      CornerMap m = facet_corner_map(n, k, side, fr.orient[fi]);
      for (std::size_t q = 0; q < m.size(); ++q) {
        auto& slot = corners[static_cast<std::size_t>(m[q])];
        const std::string& v = x.id(x.corner(f, static_cast<int>(q)));
        if (slot.empty()) slot = v;
        else if (slot != v) return std::nullopt;
      }
    }
  }
  fr.corners = std::move(corners);
  return fr;
}

}  // namespace

CubeComplex flag_complete(const CubeComplex& x0) {
  CubeComplex x = x0;
  for (int n = 3;; ++n) {
    if (x.count(n - 1) == 0) break;
    std::vector<Frame> found;
    std::set<std::vector<std::string>> seen;
    for (CubeIndex v : x.vertices()) {
      VertexLink lk = link(x, v);
      std::map<std::vector<int>, std::size_t> simplex_of;
      for (std::size_t i = 0; i < lk.simplices.size(); ++i) {
        std::vector<int> vs = lk.simplices[i].vertices;
        std::sort(vs.begin(), vs.end());
        simplex_of.emplace(vs, i);
      }
      for (const auto& [sigma, idx] : simplex_of) {
        if (static_cast<int>(sigma.size()) != n - 1) continue;
        if (std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end()) continue;
        for (int u = sigma.back() + 1; u < static_cast<int>(lk.link_vertices.size()); ++u) {
          std::vector<int> clique = sigma;
          clique.push_back(u);
          if (simplex_of.count(clique)) continue;
          bool all = true;
          for (std::size_t drop = 0; drop + 1 < clique.size() && all; ++drop) {
            std::vector<int> sub;
            for (std::size_t t = 0; t < clique.size(); ++t)
              if (t != drop) sub.push_back(clique[t]);
            all = simplex_of.count(sub) > 0;
          }
          if (!all) continue;
          auto fr = frame_at(x, lk, simplex_of, clique);
          if (!fr) continue;
          std::vector<std::string> key = fr->faces;
          std::sort(key.begin(), key.end());
          if (!seen.insert(key).second) continue;
          found.push_back(std::move(*fr));
        }
      }
    }
    if (found.empty()) {
      if (x.count(n) == 0) break;
      continue;
    }
    if (n > x.dim_cap())
      throw Error(ErrorCode::kDimensionCapExceeded,
                  "completion needs a " + std::to_string(n) + "-cube above dim_cap " +
                      std::to_string(x.dim_cap()));
    CubeComplexDescription desc = x.description();
    std::set<std::string> used;
    for (const Cube& c : desc.cubes) used.insert(c.id);
    for (Frame& fr : found) {
      Cube c;
      c.dim = fr.n;
      std::string base = "fill(";
      std::vector<std::string> key = fr.faces;
      std::sort(key.begin(), key.end());
      for (std::size_t i = 0; i < key.size(); ++i) base += (i ? "," : "") + key[i];
      base += ")";
      c.id = base;
      for (int t = 1; used.count(c.id); ++t) c.id = base + "#" + std::to_string(t);
      used.insert(c.id);
      c.faces = std::move(fr.faces);
      c.corners = std::move(fr.corners);
      bool plain = true;
      for (const auto& e : fr.orient) plain = plain && is_identity_orient(e);
      if (!plain) c.orient = std::move(fr.orient);
      desc.cubes.push_back(std::move(c));
    }
    x = CubeComplex::validate(std::move(desc));
  }
  return x;
}

// ---- subcomplexes --------------------------------------------------------

CubeComplex closure(const CubeComplex& x, std::span<const CubeIndex> cubes, std::string name) {
  std::vector<bool> keep(x.size(), false);
  std::vector<CubeIndex> stack(cubes.begin(), cubes.end());
  while (!stack.empty()) {
    CubeIndex c = stack.back();
    stack.pop_back();
    if (keep[static_cast<std::size_t>(c)]) continue;
    keep[static_cast<std::size_t>(c)] = true;
    for (int a = 0; a < x.dim(c); ++a)
      for (int s = 0; s < 2; ++s) stack.push_back(x.face(c, a, s));
    for (CubeIndex v : x.corners(c)) stack.push_back(v);
  }
  CubeComplexDescription d;
  d.name = std::move(name);
  d.dim_cap = x.dim_cap();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (keep[i]) d.cubes.push_back(x.cube(static_cast<CubeIndex>(i)));
  return CubeComplex::validate(std::move(d));
}

CubeComplex skeleton(const CubeComplex& x, int d) {
  std::vector<CubeIndex> cs;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.dim(static_cast<CubeIndex>(i)) <= d) cs.push_back(static_cast<CubeIndex>(i));
  return closure(x, cs, x.name() + ".skeleton" + std::to_string(d));
}

std::vector<int> vertex_components(const CubeComplex& x, int* count) {
  std::vector<int> comp(x.size(), -1);
  int n = 0;
  for (CubeIndex v : x.vertices()) {
    if (comp[static_cast<std::size_t>(v)] >= 0) continue;
    std::vector<CubeIndex> stack{v};
    comp[static_cast<std::size_t>(v)] = n;
    while (!stack.empty()) {
      CubeIndex u = stack.back();
      stack.pop_back();
      for (const Incidence& inc : x.incidences(u)) {
        if (x.dim(inc.cube) != 1) continue;
        CubeIndex w = x.corner(inc.cube, 1 - inc.corner);
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = n;
          stack.push_back(w);
        }
      }
    }
    ++n;
  }
  if (count) *count = n;
  return comp;
}

}  // namespace cubetool
