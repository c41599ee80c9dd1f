#include "cubetool/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cubetool/json_io.hpp"

namespace cubetool {

namespace {

Cube vertex(const std::string& id) { return Cube{id, 0, {}, {id}, {}}; }
Cube edge(const std::string& id, const std::string& a, const std::string& b) {
  return Cube{id, 1, {a, b}, {a, b}, {}};
}

}  // namespace

CubeComplexDescription standard_cube(int n, const std::string& name) {
  CubeComplexDescription d;
  d.name = name;
  d.dim_cap = std::max(3, n);
  for (const Pattern& p : all_patterns(n)) {
    Cube c;
    c.id = n == 0 ? std::string("v") : pattern_string(p);
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (p[static_cast<std::size_t>(i)] == kFree) free.push_back(i);
    c.dim = static_cast<int>(free.size());
    for (int a : free)
      for (int s = 0; s < 2; ++s) {
        Pattern q = p;
        q[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(s);
        c.faces.push_back(pattern_string(q));
      }
    for (int k = 0; k < (1 << c.dim); ++k) {
      Pattern q = p;
      for (std::size_t m = 0; m < free.size(); ++m)
        q[static_cast<std::size_t>(free[m])] = static_cast<std::int8_t>((k >> m) & 1);
      c.corners.push_back(n == 0 ? std::string("v") : pattern_string(q));
    }
    d.cubes.push_back(std::move(c));
  }
  return d;
}

CubeComplexDescription grid_patch(int nx, int ny, const std::string& name) {
  CubeComplexDescription d;
  d.name = name;
  auto v = [](int i, int j) { return "p" + std::to_string(i) + "_" + std::to_string(j); };
  auto h = [](int i, int j) { return "h" + std::to_string(i) + "_" + std::to_string(j); };
  auto w = [](int i, int j) { return "v" + std::to_string(i) + "_" + std::to_string(j); };
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      d.cubes.push_back(vertex(v(i, j)));
      if (i < nx) d.cubes.push_back(edge(h(i, j), v(i, j), v(i + 1, j)));
      if (j < ny) d.cubes.push_back(edge(w(i, j), v(i, j), v(i, j + 1)));
      if (i < nx && j < ny)
        d.cubes.push_back(Cube{"s" + std::to_string(i) + "_" + std::to_string(j),
                               2,
                               {w(i, j), w(i + 1, j), h(i, j), h(i, j + 1)},
                               {v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)},
                               {}});
    }
  return d;
}

CubeComplexDescription cycle_graph(int n, const std::string& name) {
  CubeComplexDescription d;
  d.name = name;
  for (int i = 0; i < n; ++i) {
    const int k = (i + 1) % n;
    d.cubes.push_back(vertex("x" + std::to_string(i)));
    d.cubes.push_back(edge("e" + std::to_string(i) + "_" + std::to_string(k), "x" + std::to_string(i),
                           "x" + std::to_string(k)));
  }
  return d;
}

CubeComplexDescription path_graph(int edges, const std::string& name) {
  CubeComplexDescription d;
  d.name = name;
  for (int i = 0; i <= edges; ++i) {
    d.cubes.push_back(vertex("x" + std::to_string(i)));
    if (i < edges)
      d.cubes.push_back(edge("e" + std::to_string(i), "x" + std::to_string(i), "x" + std::to_string(i + 1)));
  }
  return d;
}

CubeComplexDescription wedge_of_loops(int k, const std::string& name) {
  CubeComplexDescription d;
  d.name = name;
  d.cubes.push_back(vertex("v"));
  for (int i = 0; i < k; ++i) d.cubes.push_back(edge(std::string(1, static_cast<char>('a' + i)), "v", "v"));
  return d;
}

namespace {

CubeComplexDescription torus_like(const std::string& name, bool reflect) {
  CubeComplexDescription d;
  d.name = name;
  d.cubes = {vertex("v"), edge("a", "v", "v"), edge("b", "v", "v"),
             Cube{"Q", 2, {"b", "b", "a", "a"}, {"v", "v", "v", "v"}, {}}};
  if (reflect) d.cubes.back().orient = {{0}, {0}, {0}, {~0}};
  return d;
}

CubeComplexDescription self_glued_square() {
  CubeComplexDescription d;
  d.name = "square-self-glued";
  d.cubes = {vertex("v"), edge("a", "v", "v"), Cube{"Q", 2, {"a", "a", "a", "a"}, {"v", "v", "v", "v"}, {}}};
  return d;
}

CubeComplexDescription drop_cubes(CubeComplexDescription d, const std::string& name,
                                  const std::function<bool(const Cube&)>& drop) {
  d.name = name;
  std::vector<Cube> kept;
  for (Cube& c : d.cubes)
    if (!drop(c)) kept.push_back(std::move(c));
  d.cubes = std::move(kept);
  return d;
}

CubeComplexDescription cylinder(int n, const std::string& name) {
  CubeComplexDescription d;
  d.name = name;
  auto s = [](int i) { return std::to_string(i); };
  for (int i = 0; i < n; ++i) {
    const int k = (i + 1) % n;
    d.cubes.push_back(vertex("a" + s(i)));
    d.cubes.push_back(vertex("b" + s(i)));
    d.cubes.push_back(edge("a" + s(i) + s(k), "a" + s(i), "a" + s(k)));
    d.cubes.push_back(edge("b" + s(i) + s(k), "b" + s(i), "b" + s(k)));
    d.cubes.push_back(edge("r" + s(i), "a" + s(i), "b" + s(i)));
    d.cubes.push_back(Cube{"s" + s(i),
                           2,
                           {"r" + s(i), "r" + s(k), "a" + s(i) + s(k), "b" + s(i) + s(k)},
                           {"a" + s(i), "a" + s(k), "b" + s(i), "b" + s(k)},
                           {}});
  }
  return d;
}

using Emitter = std::function<std::vector<CorpusFile>()>;

std::vector<CorpusFile> one_complex(const CubeComplexDescription& d) {
  CubeComplex x = CubeComplex::validate(d);
  return {CorpusFile{x.name() + ".json", canonical_dump(complex_to_json(x))}};
}

const std::map<std::string, std::function<CubeComplexDescription()>>& complex_items() {
  static const std::map<std::string, std::function<CubeComplexDescription()>> items = {
      {"cube0", [] { return standard_cube(0, "cube0"); }},
      {"edge", [] { return standard_cube(1, "edge"); }},
      {"square", [] { return standard_cube(2, "square"); }},
      {"cube3", [] { return standard_cube(3, "cube3"); }},
      {"cube3-2skeleton",
       [] { return drop_cubes(standard_cube(3, "x"), "cube3-2skeleton", [](const Cube& c) { return c.dim == 3; }); }},
      {"cube3-corner",
       [] {
         // The three squares through corner 000 and their faces.
         return drop_cubes(standard_cube(3, "x"), "cube3-corner", [](const Cube& c) {
           if (c.dim == 3) return true;
           for (const std::string& v : c.corners)
             if (v == "000") return false;
           return c.dim == 2 || c.id == "111" ||
                  (c.dim == 1 && std::count(c.id.begin(), c.id.end(), '1') == 2);
         });
       }},
      {"torus", [] { return torus_like("torus", false); }},
      {"klein", [] { return torus_like("klein", true); }},
      {"square-self-glued", [] { return self_glued_square(); }},
      {"cycle3", [] { return cycle_graph(3, "cycle3"); }},
      {"cycle4", [] { return cycle_graph(4, "cycle4"); }},
      {"wedge2", [] { return wedge_of_loops(2, "wedge2"); }},
      {"path2", [] { return path_graph(2, "path2"); }},
      {"path3", [] { return path_graph(3, "path3"); }},
      {"grid2x2", [] { return grid_patch(2, 2, "grid2x2"); }},
      {"grid3x3", [] { return grid_patch(3, 3, "grid3x3"); }},
      {"cylinder4", [] { return cylinder(4, "cylinder4"); }},
  };
  return items;
}

std::vector<CorpusFile> hexagon_pair() {
  CubeComplexDescription a;
  a.name = "A";
  a.cubes = {vertex("p"), vertex("q"), edge("e", "p", "q")};
  CubeComplexDescription b = cycle_graph(3, "B");
  Json f;
  f["domain"] = "A";
  f["codomain"] = "B";
  f["cube_images"] = {{"p", "x0"}, {"q", "x1"}, {"e", "e0_1"}};
  f["collapses"] = Json::object();
  return {CorpusFile{"A.json", canonical_dump(complex_to_json(CubeComplex::validate(a)))},
          CorpusFile{"B.json", canonical_dump(complex_to_json(CubeComplex::validate(b)))},
          CorpusFile{"f.json", canonical_dump(f)}};
}

// The hexagon map completed along the identities of its domain and codomain.
std::vector<CorpusFile> functorial_hexagon() {
  std::vector<CorpusFile> files = hexagon_pair();
  auto identity = [](const CubeComplex& x) {
    Json m;
    m["domain"] = x.name();
    m["codomain"] = x.name();
    m["cube_images"] = Json::object();
    for (const Cube& c : x.cubes()) m["cube_images"][c.id] = c.id;
    m["collapses"] = Json::object();
    return canonical_dump(m);
  };
  files.push_back({"idA.json", identity(CubeComplex::validate(complex_description_from_json(Json::parse(files[0].content))))});
  files.push_back({"idB.json", identity(CubeComplex::validate(complex_description_from_json(Json::parse(files[1].content))))});
  files.push_back({"square.json", canonical_dump(Json{{"f", "f.json"}, {"s", "idA.json"}, {"g", "f.json"}, {"t", "idB.json"}})});
  return files;
}

}  // namespace

// Data items other than complexes live with their modules.
std::vector<std::pair<std::string, Emitter>> extra_corpus_items();

namespace {

const std::map<std::string, Emitter>& all_items() {
  static const std::map<std::string, Emitter> items = [] {
    std::map<std::string, Emitter> m;
    for (const auto& [name, make] : complex_items()) {
      auto mk = make;
      m.emplace(name, [mk] { return one_complex(mk()); });
    }
    m.emplace("hexagon-pair", hexagon_pair);
    m.emplace("functorial-hexagon", functorial_hexagon);
    for (auto& [name, e] : extra_corpus_items()) m.emplace(name, e);
    return m;
  }();
  return items;
}

}  // namespace

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : all_items()) out.push_back(k);
  return out;
}

std::vector<std::string> corpus_complex_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : complex_items()) out.push_back(k);
  return out;
}

std::vector<CorpusFile> corpus_emit(const std::string& name) {
  auto it = all_items().find(name);
  if (it == all_items().end()) throw Error(ErrorCode::kUnknownCorpusItem, "unknown corpus item '" + name + "'");
  return it->second();
}

CubeComplex corpus_complex(const std::string& name) {
  auto it = complex_items().find(name);
  if (it == complex_items().end()) throw Error(ErrorCode::kUnknownCorpusItem, "unknown corpus complex '" + name + "'");
  return CubeComplex::validate(it->second());
}

}  // namespace cubetool
