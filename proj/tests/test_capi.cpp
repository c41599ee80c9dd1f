#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <string>

#include "cubetool/cubetool.h"

using Json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ct_string_free(s);
  return out;
}

Json corpus_file(const std::string& item, const std::string& filename) {
  char* files = nullptr;
  REQUIRE(ct_corpus_emit(item.c_str(), &files) == CT_OK);
  const Json j = Json::parse(take(files));
  for (const auto& f : j.at("files"))
    if (f.at("filename") == filename) return Json::parse(f.at("content").get<std::string>());
  FAIL("missing corpus file " << filename);
  return {};
}

ct_complex* complex_of(const Json& j) {
  ct_complex* x = nullptr;
  REQUIRE(ct_complex_from_json(j.dump().c_str(), &x) == CT_OK);
  return x;
}

}  // namespace

TEST_CASE("status names and digests") {
  CHECK(std::string(ct_status_name(CT_OK)) == "Ok");
  CHECK(std::string(ct_status_name(CT_NEGATIVE)) == "Negative");
  CHECK(std::string(ct_status_name(CT_NOT_NPC)) == "NotNPC");
  CHECK(std::string(ct_status_name(CT_UNBALANCED)) == "Unbalanced");
  char* hex = nullptr;
  REQUIRE(ct_digest("", 0, &hex) == CT_OK);
  CHECK(take(hex) == "cbf29ce484222325");
  REQUIRE(ct_digest("a", 1, &hex) == CT_OK);
  CHECK(take(hex) == "af63dc4c8601ec8c");
}

TEST_CASE("verdicts on complexes") {
  ct_complex* torus = complex_of(corpus_file("torus", "torus.json"));
  ct_complex* klein = complex_of(corpus_file("klein", "klein.json"));
  char* report = nullptr;
  CHECK(ct_check_npc(torus, &report) == CT_OK);
  CHECK(Json::parse(take(report)).at("npc") == true);
  CHECK(ct_special(torus, &report) == CT_OK);
  take(report);
  CHECK(ct_special(klein, &report) == CT_NEGATIVE);
  const Json r = Json::parse(take(report));
  REQUIRE(r.at("pathological_walls").size() == 1);
  CHECK(r.at("pathological_walls")[0].at("one_sided") == true);

  char* sub = nullptr;
  ct_complex* square = complex_of(corpus_file("square", "square.json"));
  REQUIRE(ct_subdivide(square, &sub, &report) == CT_OK);
  CHECK(Json::parse(take(report)).at("subdivision").at("cells") == Json::array({9, 12, 4}));
  ct_complex* subdivided = nullptr;
  CHECK(ct_complex_from_json(sub, &subdivided) == CT_OK);
  take(sub);

  char* dot = nullptr;
  REQUIRE(ct_hyperplanes(torus, &report, &dot) == CT_OK);
  CHECK(Json::parse(take(report)).at("crossings") == Json::array({Json::array({0, 1})}));
  CHECK(take(dot).find("w0 -- w1") != std::string::npos);
  REQUIRE(ct_wall_graph(torus, 1, 1, &report, nullptr) == CT_OK);
  CHECK(Json::parse(take(report)).at("proper") == true);

  ct_complex_free(torus);
  ct_complex_free(klein);
  ct_complex_free(square);
  ct_complex_free(subdivided);
}

TEST_CASE("errors leave outputs untouched and are reported") {
  ct_complex* x = nullptr;
  CHECK(ct_complex_from_json("{\"cubes\": 3}", &x) == CT_MALFORMED_COMPLEX);
  CHECK(x == nullptr);
  const Json e = Json::parse(ct_last_error_json());
  CHECK(e.at("code") == "MalformedComplex");
  CHECK(std::string(ct_last_error()) == e.at("message").get<std::string>());
  CHECK(ct_complex_from_json("not json", &x) == CT_MALFORMED_INPUT);
  CHECK(ct_complex_from_json(nullptr, &x) == CT_MALFORMED_INPUT);
  CHECK(ct_check_npc(nullptr, nullptr) == CT_MALFORMED_INPUT);
  CHECK(ct_complex_load("/nonexistent/x.json", &x) == CT_MALFORMED_INPUT);
  char* files = nullptr;
  CHECK(ct_corpus_emit("no-such-item", &files) == CT_UNKNOWN_CORPUS_ITEM);
  CHECK(files == nullptr);

  ct_complex* torus = complex_of(corpus_file("torus", "torus.json"));
  char* report = nullptr;
  CHECK(ct_cover_ball(torus, "nope", 1, nullptr, &report) == CT_UNKNOWN_VERTEX);
  CHECK(report == nullptr);
  CHECK(ct_check_npc(torus, &report) == CT_OK);
  take(report);
  CHECK(std::string(ct_last_error()).empty());
  ct_complex_free(torus);
}

TEST_CASE("completion through handles") {
  ct_complex* a = complex_of(corpus_file("hexagon-pair", "A.json"));
  ct_complex* b = complex_of(corpus_file("hexagon-pair", "B.json"));
  ct_map* f = nullptr;
  REQUIRE(ct_map_from_json(corpus_file("hexagon-pair", "f.json").dump().c_str(), a, b, &f) == CT_OK);
  char *c = nullptr, *j = nullptr, *report = nullptr;
  REQUIRE(ct_complete(f, &c, &j, nullptr, nullptr, &report) == CT_OK);
  const Json r = Json::parse(take(report));
  CHECK(r.at("completion").at("degree") == 2);
  CHECK(r.at("completion").at("components") == 1);
  CHECK(r.at("completion").at("cells") == Json::array({6, 6}));
  CHECK(r.at("retraction_after_inclusion_is_identity") == true);
  CHECK(Json::parse(take(j)).at("domain") == "A");
  take(c);
  ct_map_free(f);
  ct_complex_free(a);
  ct_complex_free(b);
}

TEST_CASE("groups, presentations and ledgers") {
  char* report = nullptr;
  const std::string group = corpus_file("group-cyclic3", "group.json").dump();
  REQUIRE(ct_cusped(group.c_str(), 1, 2, 1, 0, 7, 0, nullptr, &report) == CT_OK);
  const Json r = Json::parse(take(report));
  CHECK(r.at("vertices") == 9);
  CHECK(r.at("edges") == 15);
  CHECK(r.at("probe").at("triples") == 84);

  char* pres = nullptr;
  const std::string gog = corpus_file("gog-free-product", "gog.json").dump();
  REQUIRE(ct_gog_pi1(gog.c_str(), "u", "e", &pres, &report) == CT_OK);
  CHECK(Json::parse(take(report)).at("presentation") == "<x, y | x x, y y y>");
  CHECK(Json::parse(take(pres)).at("generators") == Json::array({"x", "y"}));
  CHECK(ct_gog_pi1(gog.c_str(), "u", "", &pres, &report) == CT_NOT_SPANNING_TREE);

  const std::string good = corpus_file("ledger-balanced", "ledger.json").dump();
  const std::string bad = corpus_file("ledger-unbalanced", "ledger.json").dump();
  char* modified = nullptr;
  REQUIRE(ct_gluing_check(good.c_str(), 1, &modified, &report) == CT_OK);
  CHECK(Json::parse(take(report)).at("matching_pairs") == 6);
  CHECK(Json::parse(take(modified)).at("portals").size() == 4);
  REQUIRE(ct_gluing_check(bad.c_str(), 0, nullptr, &report) == CT_NEGATIVE);
  CHECK(Json::parse(take(report)).at("unbalanced").at("plus") == "2");
}
