#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>

#include "cubetool/corpus.hpp"
#include "cubetool/hyperplanes.hpp"
#include "oracles.hpp"
#include "random_complexes.hpp"

using namespace cubetool;

TEST_CASE("walls of small complexes") {
  CubeComplex sq = corpus_complex("square");
  WallSet ws(sq);
  REQUIRE(ws.size() == 2);
  for (const Wall& w : ws.walls()) {
    CHECK(w.midcubes.size() == 3);  // the square's midcube plus the two edge midpoints
    CHECK(w.dual_edges.size() == 2);
  }
  CubeComplex t = corpus_complex("torus");
  WallSet wt(t);
  REQUIRE(wt.size() == 2);
  for (const Wall& w : wt.walls()) CHECK(w.dual_edges.size() == 1);
  CHECK(WallSet(corpus_complex("cycle3")).size() == 3);
  CHECK(WallSet(corpus_complex("wedge2")).size() == 2);
}

TEST_CASE("every edge lies in exactly one wall") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    CubeComplex x = testgen::random_mutant(rng);
    WallSet ws(x);
    std::size_t total = 0;
    for (const Wall& w : ws.walls()) total += w.dual_edges.size();
    CHECK(total == x.count(1));
  }
}

TEST_CASE("sidedness") {
  CubeComplex t = corpus_complex("torus");
  WallSet wt(t);
  for (const Wall& w : wt.walls()) CHECK(sidedness(t, wt, w.id).two_sided);
  CubeComplex k = corpus_complex("klein");
  WallSet wk(k);
  const int a_wall = wk.wall_of_edge(*k.find("a"));
  SidednessCertificate c = sidedness(k, wk, a_wall);
  CHECK(!c.two_sided);
  CHECK(!c.odd_cycle.empty());
  CHECK(sidedness(k, wk, wk.wall_of_edge(*k.find("b"))).two_sided);
  CubeComplex e = corpus_complex("edge");
  WallSet we(e);
  CHECK(sidedness(e, we, 0).two_sided);
}

TEST_CASE("specialness verdicts") {
  CHECK(pathologies(corpus_complex("torus")).special);
  SpecialnessReport k = pathologies(corpus_complex("klein"));
  CHECK(!k.special);
  int one_sided = 0;
  for (const auto& f : k.walls) one_sided += f.one_sided;
  CHECK(one_sided == 1);
  for (const char* g : {"cycle3", "cycle4", "wedge2", "path2", "path3", "edge", "cube0"})
    CHECK_MESSAGE(pathologies(corpus_complex(g)).special, g);
  SpecialnessReport s = pathologies(corpus_complex("square-self-glued"));
  REQUIRE(s.walls.size() == 1);
  CHECK(s.walls[0].self_crossing);
  CHECK(!s.special);
  CHECK(pathologies(corpus_complex("cube3")).special);
}

TEST_CASE("direct self-osculation") {
  // A strip of two squares with its bottom corners identified: the wall
  // through the strip has two initial ends at the merged vertex.
  CubeComplexDescription d = grid_patch(2, 1, "pinched");
  d.cubes.erase(std::remove_if(d.cubes.begin(), d.cubes.end(), [](const Cube& c) { return c.id == "p2_0"; }),
                d.cubes.end());
  for (Cube& c : d.cubes)
    for (auto& v : c.corners)
      if (v == "p2_0") v = "p0_0";
  for (Cube& c : d.cubes)
    if (c.dim == 1)
      c.faces = c.corners;
  CubeComplex x = CubeComplex::validate(d);
  CHECK(is_npc(x).npc);
  SpecialnessReport r = pathologies(x);
  CHECK(!r.special);
  WallSet ws(x);
  const int w = ws.wall_of_edge(*x.find("v0_0"));
  CHECK(r.walls[static_cast<std::size_t>(w)].direct_self_osculation);
  CHECK(!direct_self_osculation(x, ws, w).empty());
  CHECK(pathologies(corpus_complex("cylinder4")).special);

  CubeComplex k = corpus_complex("klein");
  WallSet wk(k);
  CHECK_THROWS_AS(direct_self_osculation(k, wk, wk.wall_of_edge(*k.find("a"))), Error);
}

TEST_CASE("pathologies agree with the brute-force oracle") {
  auto compare = [](const CubeComplex& x) {
    SpecialnessReport r = pathologies(x);
    oracle::Pathologies o = oracle::pathologies(x);
    REQUIRE(r.walls.size() == o.flags.size());
    for (std::size_t i = 0; i < r.walls.size(); ++i) {
      CHECK(r.walls[i].self_crossing == o.flags[i][0]);
      CHECK(r.walls[i].one_sided == o.flags[i][1]);
      CHECK(r.walls[i].direct_self_osculation == o.flags[i][2]);
    }
    CHECK(r.inter_osculations.empty() == !o.inter_osculation);
    CHECK(r.special == o.special);
  };
  for (const auto& name : corpus_complex_names()) compare(corpus_complex(name));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 80; ++i) compare(testgen::random_mutant(rng));
}

TEST_CASE("co-orientation of subdivisions") {
  auto edge = std::make_shared<const CubeComplex>(corpus_complex("edge"));
  CubicalMap swap = CubicalMap::from_vertex_map(edge, edge, {{"0", "1"}, {"1", "0"}});
  CoOrientation c = co_orient_subdivision(*edge, {swap});
  CHECK(c.equivariant);
  CHECK(c.initial_end.size() == 2);

  auto t = std::make_shared<const CubeComplex>(corpus_complex("torus"));
  CHECK(co_orient_subdivision(*t, {CubicalMap::identity(t)}).equivariant);

  auto sq = std::make_shared<const CubeComplex>(corpus_complex("square"));
  CubicalMap rot = CubicalMap::from_vertex_map(sq, sq, {{"00", "10"}, {"10", "11"}, {"11", "01"}, {"01", "00"}});
  CoOrientation r = co_orient_subdivision(*sq, {rot});
  CHECK(r.equivariant);
  CHECK(r.initial_end.size() == 4);

  // The Klein bottle's one-sided wall doubles to a two-sided one.
  auto k = std::make_shared<const CubeComplex>(corpus_complex("klein"));
  CHECK(co_orient_subdivision(*k, {CubicalMap::identity(k)}).equivariant);

  // A reflection of the torus maps no subdivided wall to itself reversed.
  CubicalMapDescription d;
  d.cube_images = {{"v", "v"}, {"a", "a"}, {"b", "b"}, {"Q", "Q"}};
  d.axes = {{"a", {~0}}, {"Q", {~0, 1}}};
  CHECK(co_orient_subdivision(*t, {CubicalMap::derive(t, t, d)}).equivariant);
}

TEST_CASE("a wall-flipping automorphism is reported") {
  // On the unsubdivided edge the swap exchanges the sides of the only wall.
  auto e = std::make_shared<const CubeComplex>(corpus_complex("edge"));
  CubicalMap swap = CubicalMap::from_vertex_map(e, e, {{"0", "1"}, {"1", "0"}});
  CoOrientation c = co_orient(e, {swap});
  CHECK(!c.equivariant);
  REQUIRE(c.flips.size() == 1);
  CHECK(c.flips[0] == std::pair<int, int>{0, 0});
  CHECK(co_orient_subdivision(*e, {swap}).equivariant);
}
