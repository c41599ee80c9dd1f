#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <set>

#include "completion_instances.hpp"
#include "cubetool/completion.hpp"
#include "cubetool/corpus.hpp"
#include "cubetool/hyperplanes.hpp"

using namespace cubetool;
using comptest::graph_edge;
using comptest::graph_vertex;

namespace {

ComplexPtr corpus_ptr(const std::string& name) { return std::make_shared<const CubeComplex>(corpus_complex(name)); }
ComplexPtr make(CubeComplexDescription d) { return std::make_shared<const CubeComplex>(CubeComplex::validate(std::move(d))); }

ComplexPtr single_edge(const std::string& name, const std::string& u, const std::string& v) {
  CubeComplexDescription d;
  d.name = name;
  d.cubes = {graph_vertex(u), graph_vertex(v), graph_edge(name + "_e", u, v)};
  return make(d);
}

ComplexPtr single_vertex(const std::string& name, const std::string& v) {
  CubeComplexDescription d;
  d.name = name;
  d.cubes = {graph_vertex(v)};
  return make(d);
}

using PairEdge = std::set<std::string>;

// Edges of the completion of a graph map, straight from the vertex-pair
// rules: over each target edge {b,b'}, (a,b)-(a',b') when an edge {a,a'} maps
// onto {b,b'}, and (a,b)-(a,b') when no edge at a does.
std::multiset<PairEdge> oracle_edges(const CubicalMap& f) {
  const CubeComplex& a = f.domain();
  const CubeComplex& b = f.codomain();
  std::multiset<PairEdge> out;
  auto name = [&](CubeIndex bv, CubeIndex av) { return b.id(bv) + "@" + a.id(av); };
  for (CubeIndex be : b.edges()) {
    const CubeIndex u = b.corner(be, 0), v = b.corner(be, 1);
    for (CubeIndex av : a.vertices()) {
      CubeIndex partner = av;
      for (CubeIndex ae : a.edges()) {
        const CubeIndex p = a.corner(ae, 0), q = a.corner(ae, 1);
        if (f.image(ae) != be) continue;
        if (p == av) partner = q;
        if (q == av) partner = p;
      }
      out.insert(PairEdge{name(u, av), name(v, partner)});
    }
  }
  return out;
}

std::multiset<PairEdge> completion_edges(const CubeComplex& c) {
  std::multiset<PairEdge> out;
  for (CubeIndex e : c.edges()) out.insert(PairEdge{c.id(c.corner(e, 0)), c.id(c.corner(e, 1))});
  return out;
}

void check_invariants(const CubicalMap& f, const CompletionResult& res) {
  const CubeComplex& c = *res.completion;
  CHECK(c.count(0) == f.domain().count(0) * f.codomain().count(0));
  CHECK_FALSE(cell_difference(compose(res.inclusion, res.retraction), CubicalMap::identity(f.domain_ptr())));
  CHECK_FALSE(cell_difference(compose(res.inclusion, res.projection), f));
  CoveringReport cov = verify_covering(res.projection);
  for (int d : cov.component_degrees) CHECK(d == static_cast<int>(f.domain().count(0)));
  // j is injective on walls, and every edge in the wall of j(e) is diagonal
  // and retracts onto an edge of the wall of e.
  WallSet wa(f.domain()), wc(c);
  std::map<int, int> seen;
  for (CubeIndex e : f.domain().edges()) {
    const int w = wc.wall_of_edge(res.inclusion.image(e));
    auto [it, fresh] = seen.emplace(w, wa.wall_of_edge(e));
    CHECK((fresh || it->second == wa.wall_of_edge(e)));
    for (CubeIndex ce : wc.wall(w).dual_edges) {
      CHECK(res.edge_kind.at(c.id(ce)) == EdgeKind::kDiagonal);
      const CubeIndex re = res.retraction.image(ce);
      REQUIRE(f.domain().dim(re) == 1);
      CHECK(wa.wall_of_edge(re) == wa.wall_of_edge(e));
    }
  }
}

CubicalMap edge_onto(const ComplexPtr& e, const ComplexPtr& x, const std::string& u, const std::string& v) {
  const CubeComplex& d = *e;
  return CubicalMap::from_vertex_map(e, x, {{d.id(d.vertices()[0]), u}, {d.id(d.vertices()[1]), v}});
}

}  // namespace

TEST_CASE("completion preconditions") {
  CHECK(completion_preconditions(corpus_complex("cycle3")).ok);
  CHECK(completion_preconditions(corpus_complex("square")).ok);
  CHECK(completion_preconditions(corpus_complex("cylinder4")).ok);
  const PreconditionReport torus = completion_preconditions(corpus_complex("torus"));
  CHECK_FALSE(torus.ok);
  CHECK_FALSE(torus.simplicial);
  CHECK_FALSE(completion_preconditions(corpus_complex("klein")).ok);
  // A strip of three squares with its first and last corner on one side
  // identified: the rung wall meets that vertex twice, with no square between.
  CubeComplexDescription d;
  d.name = "bent-strip";
  auto a = [](int i) { return "a" + std::to_string(i % 3); };
  auto b = [](int i) { return "b" + std::to_string(i); };
  for (int i = 0; i < 4; ++i) {
    if (i < 3) d.cubes.push_back(graph_vertex(a(i)));
    d.cubes.push_back(graph_vertex(b(i)));
    d.cubes.push_back(graph_edge("r" + std::to_string(i), a(i), b(i)));
  }
  for (int i = 0; i < 3; ++i) {
    const std::string s = std::to_string(i);
    d.cubes.push_back(graph_edge("h" + s, a(i), a(i + 1)));
    d.cubes.push_back(graph_edge("k" + s, b(i), b(i + 1)));
    d.cubes.push_back(Cube{"s" + s, 2, {"r" + s, "r" + std::to_string(i + 1), "h" + s, "k" + s},
                           {a(i), a(i + 1), b(i), b(i + 1)}, {}});
  }
  const CubeComplex bent = CubeComplex::validate(d);
  CHECK(is_npc(bent).npc);
  const PreconditionReport rep = completion_preconditions(bent);
  CHECK(rep.simplicial);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures.back().find("meets a0 twice") != std::string::npos);
}

TEST_CASE("hexagon completion") {
  auto b = corpus_ptr("cycle3");
  auto a = single_edge("A", "p", "q");
  CubicalMap f = edge_onto(a, b, "x0", "x1");
  CompletionResult res = canonical_completion(f);
  const CubeComplex& c = *res.completion;
  CHECK(c.count(0) == 6);
  CHECK(c.count(1) == 6);
  CHECK(c.size() == 12);
  CHECK(res.components == 1);
  CHECK(res.degree == 2);
  int diagonal = 0, horizontal = 0;
  for (const auto& [id, k] : res.edge_kind) (k == EdgeKind::kDiagonal ? diagonal : horizontal)++;
  CHECK(diagonal == 2);
  CHECK(horizontal == 4);
  CHECK(completion_edges(c) == oracle_edges(f));
  // Hand trace: x0@p - x1@q - x2@q - x0@q - x1@p - x2@p - x0@p.
  const std::vector<std::string> cycle = {"x0@p", "x1@q", "x2@q", "x0@q", "x1@p", "x2@p"};
  std::multiset<PairEdge> hexagon;
  for (std::size_t i = 0; i < cycle.size(); ++i) hexagon.insert(PairEdge{cycle[i], cycle[(i + 1) % cycle.size()]});
  CHECK(completion_edges(c) == hexagon);
  CHECK(verify_covering(res.projection).degree == 2);
  CHECK(c.id(res.inclusion.image(a->vertex_index("p"))) == "x0@p");
  check_invariants(f, res);
}

TEST_CASE("vertex and identity completions") {
  auto b = corpus_ptr("cycle3");
  auto v = single_vertex("V", "v");
  CubicalMap f = CubicalMap::from_vertex_map(v, b, {{"v", "x0"}});
  CompletionResult res = canonical_completion(f);
  CHECK(res.completion->count(0) == 3);
  CHECK(res.completion->count(1) == 3);
  CHECK(res.degree == 1);
  CHECK(res.components == 1);
  for (const auto& [id, k] : res.edge_kind) CHECK(k == EdgeKind::kHorizontal);
  CHECK(res.completion->id(res.inclusion.image(0)) == "x0@v");
  check_invariants(f, res);

  auto e = corpus_ptr("edge");
  CubicalMap id = CubicalMap::identity(e);
  CompletionResult twice = canonical_completion(id);
  CHECK(twice.completion->count(0) == 4);
  CHECK(twice.completion->count(1) == 2);
  CHECK(twice.components == 2);
  CHECK(twice.degree == 2);
  for (const auto& [eid, k] : twice.edge_kind) CHECK(k == EdgeKind::kDiagonal);
  check_invariants(id, twice);
}

TEST_CASE("completions of cubes and squares") {
  auto cube = corpus_ptr("cube3");
  CubicalMap id = CubicalMap::identity(cube);
  CompletionResult res = canonical_completion(id);
  CHECK(res.components == 8);
  CHECK(res.completion->count(2) == 8 * 6);
  CHECK(res.completion->count(3) == 8);
  CHECK(is_npc(*res.completion).npc);
  check_invariants(id, res);

  // A square of the cylinder: 4 vertices, so a degree 4 cover.
  auto cyl = corpus_ptr("cylinder4");
  auto sq = corpus_ptr("square");
  CubicalMap f = CubicalMap::from_vertex_map(sq, cyl, {{"00", "a0"}, {"10", "a1"}, {"01", "b0"}, {"11", "b1"}});
  CompletionResult c2 = canonical_completion(f);
  CHECK(c2.degree == 4);
  CHECK(c2.completion->count(2) == 16);
  CHECK(is_npc(*c2.completion).npc);
  CHECK(pathologies(*c2.completion).special);
  check_invariants(f, c2);
  std::map<EdgeKind, int> kinds;
  for (const auto& [eid, k] : c2.edge_kind) kinds[k]++;
  // Every vertex of the square has a rung and an edge in the wall of a01, so
  // all lifts of the 4 rungs and of a01, b01 are diagonal.
  CHECK(kinds[EdgeKind::kDiagonal] == 4 * 4 + 2 * 4);
}

TEST_CASE("completion preconditions are enforced") {
  auto torus = corpus_ptr("torus");
  try {
    canonical_completion(CubicalMap::identity(torus));
    FAIL("torus accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPreconditionFailed);
  }
  // A path folded onto one edge is not locally injective.
  auto path = corpus_ptr("path2");
  auto e = corpus_ptr("edge");
  const CubeComplex& p = *path;
  std::map<std::string, std::string> fold;
  for (CubeIndex v : p.vertices()) fold[p.id(v)] = (v == p.vertices()[1]) ? "1" : "0";
  CubicalMap folded = CubicalMap::from_vertex_map(path, e, fold);
  try {
    canonical_completion(folded);
    FAIL("fold accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kPreconditionFailed);
  }
}

TEST_CASE("random graph completions match the vertex-pair rules") {
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 100; ++i) {
    comptest::GraphInstance inst = comptest::random_graph_instance(rng);
    CAPTURE(i);
    CHECK(inst.a->size() + inst.b->size() <= 20);
    CompletionResult res = canonical_completion(inst.f);
    CHECK(completion_edges(*res.completion) == oracle_edges(inst.f));
    CHECK(res.degree == static_cast<int>(inst.a->count(0)));
    check_invariants(inst.f, res);
  }
}

TEST_CASE("functoriality: identity square") {
  auto x = corpus_ptr("cycle3");
  auto a = single_edge("A", "p", "q");
  CubicalMap f = edge_onto(a, x, "x0", "x1");
  CommutingSquare sq{f, CubicalMap::identity(a), f, CubicalMap::identity(x)};
  FunctorialResult res = functorial_map(sq);
  CHECK(res.conditions.all_ok());
  CHECK_FALSE(cell_difference(res.hat, CubicalMap::identity(res.source.completion)));
  CHECK(res.hat_local_isometry);
}

TEST_CASE("functoriality: vertex into an edge") {
  auto x = corpus_ptr("cycle3");
  auto v = single_vertex("V", "v");
  auto y = single_edge("Y", "y0", "y1");
  auto z = single_edge("Z", "z0", "z1");
  CubicalMap f = CubicalMap::from_vertex_map(v, y, {{"v", "y0"}});
  CubicalMap s = CubicalMap::from_vertex_map(v, z, {{"v", "z0"}});
  CubicalMap t = edge_onto(y, x, "x0", "x1");
  CubicalMap g = edge_onto(z, x, "x0", "x2");
  FunctorialResult res = functorial_map(CommutingSquare{f, s, g, t});
  CHECK(res.conditions.all_ok());
  CHECK(res.source.degree == 1);
  CHECK(res.source.completion->count(0) == 2);
  CHECK(res.target.completion->count(0) == 6);
  CHECK(res.target.components == 1);
  const CubeComplex& c = *res.source.completion;
  const CubeComplex& c2 = *res.target.completion;
  CHECK(c2.id(res.hat.image(c.vertex_index("y0@v"))) == "x0@z0");
  CHECK(c2.id(res.hat.image(c.vertex_index("y1@v"))) == "x1@z0");
  CHECK(res.target.edge_kind.at(c2.id(res.hat.image(c.edges()[0]))) == EdgeKind::kHorizontal);
  CHECK(res.hat_local_isometry);
  CHECK(res.cells_checked > 0);
}

TEST_CASE("functoriality: an extra vertex violates the edge-lifting condition") {
  auto x = corpus_ptr("cylinder4");
  CubeComplexDescription d = x->description();
  d.name = "cylinder4+p";
  d.cubes.push_back(graph_vertex("p"));
  auto y = make(d);
  std::map<std::string, std::string> vm;
  for (CubeIndex v : y->vertices()) vm[y->id(v)] = y->id(v) == "p" ? "a0" : y->id(v);
  CubicalMap t = CubicalMap::from_vertex_map(y, x, vm);
  CommutingSquare sq{CubicalMap::identity(y), CubicalMap::identity(y), t, t};
  FunctorialConditions conds = functorial_conditions(sq);
  CHECK(conds.conditions[0].ok);
  CHECK(conds.conditions[1].ok);
  CHECK_FALSE(conds.conditions[2].ok);
  CHECK(conds.conditions[2].witness.rfind("p:", 0) == 0);
  try {
    functorial_map(sq);
    FAIL("condition (iii) not reported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConditionFailed);
    REQUIRE(e.details().size() == 2);
    CHECK(e.details()[0] == "iii");
  }
}

TEST_CASE("functoriality: two walls onto one fails condition (ii)") {
  // Two disjoint edges of Y onto one edge of X.
  auto x = corpus_ptr("cycle4");
  CubeComplexDescription d;
  d.name = "Y";
  d.cubes = {graph_vertex("u0"), graph_vertex("u1"), graph_vertex("w0"), graph_vertex("w1"),
             graph_edge("eu", "u0", "u1"), graph_edge("ew", "w0", "w1")};
  auto y = make(d);
  CubicalMap t = CubicalMap::from_vertex_map(y, x, {{"u0", "x0"}, {"u1", "x1"}, {"w0", "x0"}, {"w1", "x1"}});
  CommutingSquare sq{CubicalMap::identity(y), CubicalMap::identity(y), t, t};
  FunctorialConditions conds = functorial_conditions(sq);
  CHECK_FALSE(conds.conditions[1].ok);
  CHECK(conds.conditions[1].witness == "eu,ew");
}

TEST_CASE("functoriality: random graph squares") {
  std::mt19937_64 rng(7);
  int built = 0, refused = 0;
  std::set<int> failed_conditions;
  for (int trial = 0; trial < 300; ++trial) {
    auto x = make(comptest::random_graph(rng, 3 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), "X"));
    CubicalMap t = comptest::random_immersion(rng, x, 10, "Y");
    CubicalMap g = comptest::random_immersion(rng, x, 10, "Z");
    const CubeComplex& y = t.domain();
    const CubeComplex& z = g.domain();
    // A random piece of the fiber product of t and g.
    std::vector<std::pair<CubeIndex, CubeIndex>> pts;
    for (CubeIndex a : y.vertices())
      for (CubeIndex b : z.vertices())
        if (t.image(a) == g.image(b) && rng() % 2) pts.push_back({a, b});
    if (pts.empty()) continue;
    CubeComplexDescription vd;
    vd.name = "V";
    std::map<std::string, std::string> fv, sv;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string id = "v" + std::to_string(i);
      vd.cubes.push_back(graph_vertex(id));
      fv[id] = y.id(pts[i].first);
      sv[id] = z.id(pts[i].second);
    }
    // Edges of Y and Z already used at each point, to keep f and s locally
    // injective.
    std::map<std::pair<std::size_t, CubeIndex>, bool> at_y, at_z;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t k = i + 1; k < pts.size(); ++k)
        for (CubeIndex ey : y.edges())
          for (CubeIndex ez : z.edges()) {
            const std::set<CubeIndex> ye{y.corner(ey, 0), y.corner(ey, 1)}, ze{z.corner(ez, 0), z.corner(ez, 1)};
            if (ye != std::set<CubeIndex>{pts[i].first, pts[k].first}) continue;
            if (ze != std::set<CubeIndex>{pts[i].second, pts[k].second}) continue;
            if (t.image(ey) != g.image(ez) || rng() % 3 == 0) continue;
            if (at_y[{i, ey}] || at_y[{k, ey}] || at_z[{i, ez}] || at_z[{k, ez}]) continue;
            at_y[{i, ey}] = at_y[{k, ey}] = at_z[{i, ez}] = at_z[{k, ez}] = true;
            vd.cubes.push_back(graph_edge("w" + std::to_string(i) + "_" + std::to_string(k), "v" + std::to_string(i),
                                          "v" + std::to_string(k)));
          }
    ComplexPtr v;
    std::optional<CubicalMap> f, s;
    try {
      v = make(vd);
      f = CubicalMap::from_vertex_map(v, t.domain_ptr(), fv);
      s = CubicalMap::from_vertex_map(v, g.domain_ptr(), sv);
    } catch (const Error&) {
      continue;
    }
    if (!is_local_isometry(*f).ok || !is_local_isometry(*s).ok) continue;
    CommutingSquare sq{*f, *s, g, t};
    FunctorialConditions conds = functorial_conditions(sq);
    if (conds.all_ok()) {
      FunctorialResult res = functorial_map(sq);
      CHECK(res.hat_local_isometry);
      ++built;
    } else {
      int first = 0;
      while (conds.conditions[static_cast<std::size_t>(first)].ok) ++first;
      failed_conditions.insert(first);
      static const char* names[] = {"i", "ii", "iii", "iv"};
      try {
        functorial_map(sq);
        FAIL("failing square accepted");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kConditionFailed);
        CHECK(e.details().at(0) == names[first]);
      }
      ++refused;
    }
  }
  CHECK(built >= 10);
  CHECK(refused >= 10);
  CHECK(failed_conditions.count(2) == 1);
}
