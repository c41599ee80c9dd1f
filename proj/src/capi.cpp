#include "cubetool/cubetool.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "cubetool/completion.hpp"
#include "cubetool/complex.hpp"
#include "cubetool/corpus.hpp"
#include "cubetool/cubical_map.hpp"
#include "cubetool/cusped.hpp"
#include "cubetool/geometry.hpp"
#include "cubetool/gog.hpp"
#include "cubetool/hyperplanes.hpp"
#include "cubetool/json_io.hpp"
#include "cubetool/wallgraph.hpp"

using namespace cubetool;

struct ct_complex {
  ComplexPtr x;
};

struct ct_map {
  CubicalMap f;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_error_json = "{}";

void set_error(const std::string& code, const std::string& message, const std::vector<std::string>& details) {
  last_error = message;
  last_error_json = Json{{"code", code}, {"message", message}, {"details", details}}.dump();
}

template <class F>
int guarded(F&& body) {
  try {
    last_error.clear();
    last_error_json = "{}";
    return body();
  } catch (const Error& e) {
    set_error(error_code_name(e.code()), e.what(), e.details());
    return static_cast<int>(e.code());
  } catch (const Json::exception& e) {
    set_error(error_code_name(ErrorCode::kMalformedInput), e.what(), {});
    return CT_MALFORMED_INPUT;
  } catch (const std::bad_alloc&) {
    set_error(error_code_name(ErrorCode::kInternal), "out of memory", {});
    return CT_INTERNAL;
  } catch (const std::exception& e) {
    set_error(error_code_name(ErrorCode::kInternal), e.what(), {});
    return CT_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

void put(char** out, const Json& j) { put(out, canonical_dump(j)); }

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kMalformedInput, std::string("missing ") + what);
}

Json parse(const char* text, const char* what) {
  require(text, what);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string(what) + " is not JSON: " + e.what());
  }
}

Json cell_counts(const CubeComplex& x) {
  Json out = Json::array();
  for (int d = 0; d <= x.dim(); ++d) out.push_back(x.count(d));
  return out;
}

Json complex_summary(const CubeComplex& x) {
  return {{"name", x.name()}, {"cells", cell_counts(x)}, {"digest", digest_hex(canonical_dump(complex_to_json(x)))}};
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

ComplexPtr load_complex(const std::filesystem::path& path) {
  return std::make_shared<const CubeComplex>(complex_from_json(read_json_file(path.string())));
}

// Maps next to each other share their complexes by name.
class MapLoader {
 public:
  CubicalMap load(const std::filesystem::path& path) {
    const Json j = read_json_file(path.string());
    const CubicalMapDescription d = map_description_from_json(j);
    return CubicalMap::derive(complex(path.parent_path(), d.domain), complex(path.parent_path(), d.codomain), d);
  }

 private:
  ComplexPtr complex(const std::filesystem::path& dir, const std::string& name) {
    if (name.empty()) throw Error(ErrorCode::kMalformedMap, "map does not name its domain and codomain");
    const std::string key = (dir / (name + ".json")).string();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ComplexPtr x = load_complex(key);
    if (x->name() != name)
      throw Error(ErrorCode::kMalformedMap, key + " holds complex '" + x->name() + "', not '" + name + "'");
    return cache_[key] = x;
  }

  std::map<std::string, ComplexPtr> cache_;
};

Json balances_json(const std::vector<ClassBalance>& bs) {
  Json out = Json::array();
  for (const ClassBalance& b : bs) out.push_back({{"class", b.klass}, {"plus", b.plus}, {"minus", b.minus}});
  return out;
}

Json completion_summary(const CompletionResult& c) {
  std::size_t horizontal = 0, diagonal = 0;
  for (const auto& [id, k] : c.edge_kind) (k == EdgeKind::kHorizontal ? horizontal : diagonal)++;
  return {{"cells", cell_counts(*c.completion)}, {"degree", c.degree}, {"components", c.components},
          {"horizontal_edges", horizontal}, {"diagonal_edges", diagonal}};
}

}  // namespace

extern "C" {

const char* ct_version(void) { return "0.1.0"; }

const char* ct_status_name(int status) {
  if (status == CT_OK) return "Ok";
  if (status == CT_NEGATIVE) return "Negative";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* ct_last_error(void) { return last_error.c_str(); }
const char* ct_last_error_json(void) { return last_error_json.c_str(); }
void ct_string_free(char* s) { std::free(s); }

int ct_digest(const char* data, size_t length, char** hex) {
  return guarded([&] {
    if (length) require(data, "data");
    put(hex, digest_hex(std::string(data ? data : "", length)));
    return CT_OK;
  });
}

int ct_complex_from_json(const char* json, ct_complex** out) {
  return guarded([&] {
    require(out, "output handle");
    auto x = std::make_shared<const CubeComplex>(complex_from_json(parse(json, "complex")));
    *out = new ct_complex{std::move(x)};
    return CT_OK;
  });
}

int ct_complex_load(const char* path, ct_complex** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output handle");
    *out = new ct_complex{load_complex(path)};
    return CT_OK;
  });
}

void ct_complex_free(ct_complex* x) { delete x; }

int ct_complex_to_json(const ct_complex* x, char** json) {
  return guarded([&] {
    require(x, "complex");
    put(json, complex_to_json(*x->x));
    return CT_OK;
  });
}

int ct_map_load(const char* path, ct_map** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output handle");
    MapLoader loader;
    *out = new ct_map{loader.load(path)};
    return CT_OK;
  });
}

int ct_map_from_json(const char* json, const ct_complex* domain, const ct_complex* codomain, ct_map** out) {
  return guarded([&] {
    require(domain, "domain");
    require(codomain, "codomain");
    require(out, "output handle");
    const CubicalMapDescription d = map_description_from_json(parse(json, "map"));
    *out = new ct_map{CubicalMap::derive(domain->x, codomain->x, d)};
    return CT_OK;
  });
}

void ct_map_free(ct_map* f) { delete f; }

int ct_check_npc(const ct_complex* x, char** report) {
  return guarded([&] {
    require(x, "complex");
    const NpcVerdict v = is_npc(*x->x);
    Json witness = Json::array();
    for (const EdgeEnd& e : v.witness) witness.push_back(edge_end_string(*x->x, e));
    put(report, Json{{"command", "check-npc"},
                     {"complex", complex_summary(*x->x)},
                     {"npc", v.npc},
                     {"failure", npc_failure_name(v.failure)},
                     {"vertex", v.vertex >= 0 ? Json(x->x->id(v.vertex)) : Json()},
                     {"witness", witness}});
    return v.npc ? CT_OK : CT_NEGATIVE;
  });
}

int ct_subdivide(const ct_complex* x, char** complex_json, char** report) {
  return guarded([&] {
    require(x, "complex");
    const Subdivision s = barycentric_subdivision(*x->x);
    const std::string text = canonical_dump(complex_to_json(s.complex));
    Json r{{"command", "subdivide"}, {"complex", complex_summary(*x->x)}, {"subdivision", complex_summary(s.complex)}};
    put(complex_json, text);
    put(report, r);
    return CT_OK;
  });
}

int ct_hyperplanes(const ct_complex* x, char** report, char** dot) {
  return guarded([&] {
    require(x, "complex");
    const CubeComplex& c = *x->x;
    const WallSet ws(c);
    std::set<std::pair<int, int>> crossings;
    for (CubeIndex q = 0; q < static_cast<CubeIndex>(c.size()); ++q)
      for (int a = 0; a < c.dim(q); ++a)
        for (int b = a + 1; b < c.dim(q); ++b) {
          const int u = ws.wall_of(q, a), v = ws.wall_of(q, b);
          crossings.insert({std::min(u, v), std::max(u, v)});
        }
    Json walls = Json::array();
    for (const Wall& w : ws.walls()) {
      const SidednessCertificate s = sidedness(c, ws, w.id);
      Json dual = Json::array();
      for (CubeIndex e : w.dual_edges) dual.push_back(c.id(e));
      walls.push_back({{"id", w.id},
                       {"midcubes", w.midcubes.size()},
                       {"dual_edges", dual},
                       {"carrier_cubes", w.carrier.size()},
                       {"two_sided", s.two_sided},
                       {"odd_cycle", s.odd_cycle}});
    }
    Json cross = Json::array();
    for (const auto& [u, v] : crossings) cross.push_back({u, v});
    put(report, Json{{"command", "hyperplanes"}, {"complex", complex_summary(c)}, {"walls", walls}, {"crossings", cross}});
    if (dot) {
      std::ostringstream out;
      out << "graph walls {\n";
      for (const Wall& w : ws.walls()) out << "  w" << w.id << ";\n";
      for (const auto& [u, v] : crossings) out << "  w" << u << " -- w" << v << ";\n";
      out << "}\n";
      put(dot, out.str());
    }
    return CT_OK;
  });
}

int ct_special(const ct_complex* x, char** report) {
  return guarded([&] {
    require(x, "complex");
    const SpecialnessReport r = pathologies(*x->x);
    Json walls = Json::array();
    for (const WallFlags& w : r.walls) {
      if (!w.self_crossing && !w.one_sided && !w.direct_self_osculation) continue;
      walls.push_back({{"wall", w.wall},
                       {"self_crossing", w.self_crossing},
                       {"one_sided", w.one_sided},
                       {"direct_self_osculation", w.direct_self_osculation},
                       {"witness", w.witness}});
    }
    Json inter = Json::array();
    for (const InterOsculation& o : r.inter_osculations)
      inter.push_back({{"walls", {o.wall_a, o.wall_b}}, {"vertex", o.vertex}, {"witness", o.witness}});
    put(report, Json{{"command", "special"},
                     {"complex", complex_summary(*x->x)},
                     {"special", r.special},
                     {"wall_count", r.walls.size()},
                     {"pathological_walls", walls},
                     {"inter_osculations", inter}});
    return r.special ? CT_OK : CT_NEGATIVE;
  });
}

int ct_cover_ball(const ct_complex* x, const char* base, int radius, char** ball_json, char** report) {
  return guarded([&] {
    require(x, "complex");
    require(base, "base vertex");
    const CoverBall b = universal_cover_ball(x->x, base, radius);
    int deepest = 0;
    for (int d : b.depth) deepest = std::max(deepest, d);
    const std::string text = canonical_dump(complex_to_json(*b.total));
    Json r{{"command", "cover-ball"},
           {"complex", complex_summary(*x->x)},
           {"basepoint", b.basepoint},
           {"radius", b.radius},
           {"ball", complex_summary(*b.total)},
           {"max_depth", deepest}};
    put(ball_json, text);
    put(report, r);
    return CT_OK;
  });
}

int ct_gate(const ct_complex* x, const char* region_json, const char* vertex, char** report) {
  return guarded([&] {
    require(x, "complex");
    require(vertex, "vertex");
    const CubeComplex& c = *x->x;
    const Json region = parse(region_json, "region");
    if (c.count(0) == 0) throw Error(ErrorCode::kEmptyRegion, "complex has no vertices");
    const CubeIndex root = region.contains("root") ? c.vertex_index(region.at("root").get<std::string>()) : c.vertices()[0];
    std::vector<std::pair<int, int>> hs;
    for (const auto& h : region.at("halfspaces")) hs.emplace_back(h.at(0).get<int>(), h.at(1).get<int>());
    const WallSet ws(c);
    const WallSides sides(c, ws, root);
    const Region reg = region_from_halfspaces(c, sides, hs);
    const CubeIndex v = c.vertex_index(vertex);
    const GateResult g = gate(c, sides, reg.vertices, v);
    put(report, Json{{"command", "gate"},
                     {"complex", complex_summary(c)},
                     {"vertex", vertex},
                     {"region_vertices", reg.vertices.size()},
                     {"gate", c.id(g.gate)},
                     {"distance", distance(c, vertex, c.id(g.gate))},
                     {"separating_walls", g.separating_walls}});
    return CT_OK;
  });
}

int ct_wall_graph(const ct_complex* x, int radius, int color, char** report, char** dot) {
  return guarded([&] {
    require(x, "complex");
    const WallSet ws(*x->x);
    const WallGraph g = wall_graph(*x->x, ws, radius);
    Json r{{"command", "wall-graph"},
           {"complex", complex_summary(*x->x)},
           {"radius", radius},
           {"walls", g.size()},
           {"edges", g.edge_count},
           {"max_degree", g.max_degree},
           {"adjacency", g.adjacency}};
    Coloring c;
    if (color) {
      c = greedy_color(g);
      int used = 0;
      for (int k : c) used = std::max(used, k);
      r["coloring"] = c;
      r["colors_used"] = used;
      r["proper"] = is_proper(g, c);
      r["within_degree_bound"] = used <= g.max_degree + 1;
    }
    put(report, r);
    if (dot) {
      std::ostringstream out;
      out << "graph wall_graph {\n";
      for (std::size_t w = 0; w < g.size(); ++w) {
        out << "  w" << w;
        if (color) out << " [label=" << dot_id("w" + std::to_string(w) + ":" + std::to_string(c[w])) << "]";
        out << ";\n";
      }
      for (std::size_t w = 0; w < g.size(); ++w)
        for (int u : g.adjacency[w])
          if (static_cast<std::size_t>(u) > w) out << "  w" << w << " -- w" << u << ";\n";
      out << "}\n";
      put(dot, out.str());
    }
    return CT_OK;
  });
}

int ct_complete(const ct_map* f, char** completion_json, char** j, char** r, char** p, char** report) {
  return guarded([&] {
    require(f, "map");
    const CompletionResult c = canonical_completion(f->f);
    const bool rj = !cell_difference(compose(c.inclusion, c.retraction), CubicalMap::identity(f->f.domain_ptr()));
    const bool pj = !cell_difference(compose(c.inclusion, c.projection), f->f);
    const CoveringReport cov = verify_covering(c.projection);
    Json rep{{"command", "complete"},
             {"domain", complex_summary(f->f.domain())},
             {"codomain", complex_summary(f->f.codomain())},
             {"completion", completion_summary(c)},
             {"retraction_after_inclusion_is_identity", rj},
             {"projection_after_inclusion_is_map", pj},
             {"fiber_sizes", cov.component_degrees},
             {"domain_vertices", f->f.domain().count(0)}};
    if (!rj || !pj) throw Error(ErrorCode::kInternal, "completion identities fail");
    put(completion_json, complex_to_json(*c.completion));
    put(j, map_to_json(c.inclusion));
    put(r, map_to_json(c.retraction));
    put(p, map_to_json(c.projection));
    put(report, rep);
    return CT_OK;
  });
}

int ct_functorial(const char* square_path, char** report) {
  return guarded([&] {
    require(square_path, "square path");
    const std::filesystem::path path(square_path);
    const Json sq = read_json_file(path.string());
    MapLoader loader;
    auto map = [&](const char* key) { return loader.load(path.parent_path() / sq.at(key).get<std::string>()); };
    const CommutingSquare square{map("f"), map("s"), map("g"), map("t")};
    const FunctorialConditions fc = functorial_conditions(square);
    static const char* names[] = {"i", "ii", "iii", "iv"};
    Json conds = Json::object();
    for (std::size_t k = 0; k < 4; ++k)
      conds[names[k]] = {{"ok", fc.conditions[k].ok}, {"witness", fc.conditions[k].witness}};
    Json rep{{"command", "functorial"}, {"conditions", conds}, {"accepted", fc.all_ok()}};
    if (!fc.all_ok()) {
      put(report, rep);
      return CT_NEGATIVE;
    }
    const FunctorialResult res = functorial_map(square);
    rep["hat_local_isometry"] = res.hat_local_isometry;
    rep["cells_checked"] = res.cells_checked;
    rep["source"] = completion_summary(res.source);
    rep["target"] = completion_summary(res.target);
    put(report, rep);
    return CT_OK;
  });
}

int ct_cusped(const char* group_json, int rho, int depth, int probe, uint64_t samples, uint64_t seed, uint64_t budget,
              char** ball_json, char** report) {
  return guarded([&] {
    const GroupSpec spec = group_from_json(parse(group_json, "group"));
    const CuspedBall ball = build_cusped_ball(spec, rho, depth, budget ? static_cast<std::size_t>(budget) : 200000);
    Json doubling = Json::array();
    for (const auto& levels : ball.doubling) {
      Json sizes = Json::array();
      for (const auto& s : levels) sizes.push_back(s.size());
      doubling.push_back(sizes);
    }
    Json r{{"command", "cusped"},
           {"rho", rho},
           {"depth", depth},
           {"vertices", ball.vertices.size()},
           {"edges", ball.edges.size()},
           {"cayley_edges", ball.count(CuspedEdgeKind::kCayley)},
           {"vertical_edges", ball.count(CuspedEdgeKind::kVertical)},
           {"horizontal_edges", ball.count(CuspedEdgeKind::kHorizontal)},
           {"cosets", ball.cosets.size()},
           {"doubling_sizes", doubling},
           {"uncertified_edges", ball.uncertified_edges}};
    if (probe) {
      SlimOptions o;
      o.exhaustive = samples == 0;
      o.samples = samples ? static_cast<std::size_t>(samples) : o.samples;
      o.seed = seed;
      const SlimReport s = slim_probe(ball.graph(), o);
      r["probe"] = {{"delta", s.delta},         {"worst", s.worst},          {"four_point", s.four_point},
                    {"triples", s.triples},     {"quadruples", s.quadruples}, {"exhaustive", o.exhaustive},
                    {"samples", o.samples},     {"seed", seed}};
    }
    if (ball_json) {
      Json out{{"rho", rho}, {"depth", depth}};
      out["vertices"] = Json::array();
      for (const CuspedVertex& v : ball.vertices) out["vertices"].push_back({{"name", v.name}, {"depth", v.depth}});
      out["edges"] = Json::array();
      for (const CuspedEdge& e : ball.edges)
        out["edges"].push_back({{"u", ball.vertices[static_cast<std::size_t>(e.u)].name},
                                {"v", ball.vertices[static_cast<std::size_t>(e.v)].name},
                                {"kind", cusped_edge_kind_name(e.kind)},
                                {"level", e.level},
                                {"label", e.label}});
      out["cosets"] = Json::array();
      for (const Coset& c : ball.cosets) out["cosets"].push_back(c.name);
      put(ball_json, out);
    }
    put(report, r);
    return CT_OK;
  });
}

int ct_gog_pi1(const char* gog_json, const char* base, const char* tree_csv, char** presentation_json, char** report) {
  return guarded([&] {
    require(base, "base vertex");
    const GraphOfGroups g = gog_from_json(parse(gog_json, "graph of groups"));
    std::vector<std::string> tree;
    if (tree_csv) {
      std::stringstream ss(tree_csv);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) tree.push_back(item);
    }
    const Pi1Presentation p = pi1_presentation(g, base, tree);
    put(presentation_json, presentation_to_json(p.presentation));
    put(report, Json{{"command", "gog"},
                     {"base", base},
                     {"tree", tree},
                     {"presentation", format_presentation(p.presentation)},
                     {"generators", p.presentation.generators.size()},
                     {"relators", p.presentation.relators.size()},
                     {"abelian_rank", abelian_rank(p.presentation)},
                     {"warnings", p.warnings}});
    return CT_OK;
  });
}

int ct_gluing_check(const char* ledger_json, int modify, char** modified_json, char** report) {
  return guarded([&] {
    const HierarchyLedger l = ledger_from_json(parse(ledger_json, "ledger"));
    Json r{{"command", "gluing-check"}, {"modify", static_cast<bool>(modify)}};
    try {
      const GluingReport g = gluing_check(l, modify != 0);
      r["balanced"] = true;
      r["size_sums"] = balances_json(g.size_sums);
      r["edge_counts"] = balances_json(g.edge_counts);
      if (modify) {
        const HierarchyLedger m = virtual_modify(l);
        r["portal_counts"] = balances_json(g.portal_counts);
        r["matching_pairs"] = portal_matching(m).size();
        put(modified_json, ledger_to_json(m));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnbalanced) throw;
      const auto& d = e.details();
      r["balanced"] = false;
      r["unbalanced"] = {{"form", d.at(0)}, {"class", d.at(1)}, {"plus", d.at(2)}, {"minus", d.at(3)}};
      put(report, r);
      return CT_NEGATIVE;
    }
    put(report, r);
    return CT_OK;
  });
}

int ct_corpus_list(char** json) {
  return guarded([&] {
    put(json, Json{{"items", corpus_names()}, {"complexes", corpus_complex_names()}});
    return CT_OK;
  });
}

int ct_corpus_emit(const char* name, char** files_json) {
  return guarded([&] {
    require(name, "corpus item");
    Json files = Json::array();
    for (const CorpusFile& f : corpus_emit(name)) files.push_back({{"filename", f.filename}, {"content", f.content}});
    put(files_json, Json{{"files", files}});
    return CT_OK;
  });
}

}  // extern "C"
