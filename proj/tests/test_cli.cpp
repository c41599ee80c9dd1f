#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int exit_code = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cubetool_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args) {
  const std::string cmd = "cd '" + workdir().string() + "' && '" CUBETOOL_CLI "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Result r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json report(const Result& r) { return Json::parse(r.out); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& item) { REQUIRE(run("corpus emit " + item + " --dir " + item).exit_code == 0); }

}  // namespace

TEST_CASE("corpus listing and emission") {
  const Result list = run("corpus list");
  CHECK(list.exit_code == 0);
  CHECK(report(list).at("items").size() >= 10);

  emit("torus");
  const std::string first = slurp(workdir() / "torus" / "torus.json");
  REQUIRE(run("corpus emit torus --dir again").exit_code == 0);
  CHECK(slurp(workdir() / "again" / "torus.json") == first);

  emit("hexagon-pair");
  for (const char* f : {"A.json", "B.json", "f.json"}) CHECK(fs::exists(workdir() / "hexagon-pair" / f));
  CHECK(run("corpus emit nothing-here").exit_code == 2);
}

TEST_CASE("exit codes follow verdicts") {
  emit("torus");
  emit("klein");
  emit("hexagon-pair");
  CHECK(run("check-npc torus/torus.json").exit_code == 0);

  const Result special = run("special klein/klein.json");
  CHECK(special.exit_code == 1);
  const Json r = report(special);
  CHECK(r.at("verdict") == "negative");
  CHECK(r.at("pathological_walls")[0].at("one_sided") == true);

  const Result complete = run("complete hexagon-pair/f.json --out C.json --emit j.json r.json p.json");
  CHECK(complete.exit_code == 0);
  CHECK(report(complete).at("completion").at("degree") == 2);
  for (const char* f : {"C.json", "j.json", "r.json", "p.json"}) CHECK(fs::exists(workdir() / f));

  emit("ledger-unbalanced");
  CHECK(run("gluing-check ledger-unbalanced/ledger.json").exit_code == 1);
}

TEST_CASE("remaining commands") {
  emit("torus");
  emit("functorial-hexagon");
  emit("group-cyclic3");
  emit("gog-abelian-loop");
  emit("ledger-balanced");
  CHECK(run("subdivide torus/torus.json --out sd.json").exit_code == 0);
  CHECK(run("check-npc sd.json").exit_code == 0);
  CHECK(run("hyperplanes torus/torus.json --dot walls.dot").exit_code == 0);
  CHECK(slurp(workdir() / "walls.dot").rfind("graph walls {", 0) == 0);
  REQUIRE(run("cover-ball torus/torus.json --base v --radius 2 --out ball.json").exit_code == 0);
  {
    std::ofstream(workdir() / "region.json") << R"({"halfspaces": [[0, 1]]})";
  }
  const Result gate = run("gate ball.json --region region.json --vertex v@o");
  CHECK(gate.exit_code == 0);
  CHECK(report(gate).at("distance") == 2);
  CHECK(run("wall-graph torus/torus.json --R 1 --color --dot g.dot --json g.json").exit_code == 0);
  CHECK(fs::exists(workdir() / "g.json"));
  CHECK(report(run("functorial functorial-hexagon/square.json")).at("accepted") == true);
  const Result cusped = run("cusped group-cyclic3/group.json --rho 1 --depth 2 --probe --samples 50 --seed 3");
  CHECK(cusped.exit_code == 0);
  CHECK(report(cusped).at("probe").at("seed") == 3);
  const Result pi1 = run("gog pi1 gog-abelian-loop/gog.json --base v --out pres.json");
  CHECK(pi1.exit_code == 0);
  CHECK(report(pi1).at("abelian_rank") == 2);
  CHECK(run("gluing-check ledger-balanced/ledger.json --modify --out modified.json").exit_code == 0);
  CHECK(run("gluing-check modified.json").exit_code == 0);
}

TEST_CASE("reports are reproducible and errors are structured") {
  emit("group-cyclic3");
  const std::string args = "cusped group-cyclic3/group.json --rho 2 --depth 2 --probe --samples 100 --seed 9";
  CHECK(run(args).out == run(args).out);
  const Result with_report = run(args + " --report rep.json");
  CHECK(with_report.out == slurp(workdir() / "rep.json"));

  {
    std::ofstream(workdir() / "broken.json") << R"({"name": "x", "cubes": [{"id": "e", "dim": 1, "faces": ["a", "b"]}]})";
  }
  const Result bad = run("check-npc broken.json --report err.json");
  CHECK(bad.exit_code == 2);
  const Json e = Json::parse(slurp(workdir() / "err.json"));
  CHECK(e.at("error").at("code") == "MalformedComplex");
  CHECK(run("check-npc").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("cusped group-cyclic3/group.json --rho 1 --depth 3 --budget 5").exit_code == 2);
  CHECK(report(run("check-npc broken.json --timing")).contains("timing_ms"));
}
