#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cubetool/cubetool.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitError = 2;

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { ct_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? std::string(p) : std::string(); }
  explicit operator bool() const { return p != nullptr; }
};

struct ComplexHandle {
  ct_complex* p = nullptr;
  ~ComplexHandle() { ct_complex_free(p); }
};

struct MapHandle {
  ct_map* p = nullptr;
  ~MapHandle() { ct_map_free(p); }
};

// Raised for library failures; carries the status code.
struct Failure {
  int status;
};

int check(int status) {
  if (status != CT_OK && status != CT_NEGATIVE) throw Failure{status};
  return status;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string digest(const std::string& bytes) {
  Text hex;
  check(ct_digest(bytes.data(), bytes.size(), hex.out()));
  return hex.str();
}

struct Run {
  std::string command;
  std::vector<std::string> inputs;
  // Returns the library status and fills the report.
  std::function<int(Json&)> body;
};

struct Globals {
  std::string report_path;
  bool timing = false;
};

int execute(const Run& run, const Globals& g) {
  Json report;
  int exit_code = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    Json inputs = Json::array();
    for (const std::string& path : run.inputs) inputs.push_back({{"path", path}, {"digest", digest(read_file(path))}});
    const int status = run.body(report);
    report["inputs"] = inputs;
    report["verdict"] = status == CT_OK ? "positive" : "negative";
    exit_code = status == CT_OK ? 0 : 1;
  } catch (const Failure& f) {
    report = {{"command", run.command}, {"error", Json::parse(ct_last_error_json())}};
    report["error"]["status"] = f.status;
    std::cerr << "cubetool " << run.command << ": " << ct_status_name(f.status) << ": " << ct_last_error() << "\n";
    exit_code = kExitError;
  } catch (const std::exception& e) {
    report = {{"command", run.command}, {"error", {{"code", "MalformedInput"}, {"message", e.what()}, {"details", Json::array()}}}};
    std::cerr << "cubetool " << run.command << ": " << e.what() << "\n";
    exit_code = kExitError;
  }
  report["exit_code"] = exit_code;
  if (g.timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!g.report_path.empty()) {
    try {
      write_file(g.report_path, text);
    } catch (const std::exception& e) {
      std::cerr << "cubetool: " << e.what() << "\n";
      return kExitError;
    }
  }
  return exit_code;
}

Json parse_report(const Text& t) { return Json::parse(t.str()); }

void load_complex(const std::string& path, ComplexHandle& h) { check(ct_complex_load(path.c_str(), &h.p)); }

void maybe_write(const std::string& path, const Text& t) {
  if (!path.empty() && t) write_file(path, t.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cube complex toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--report", g.report_path, "Write the JSON report to this file");
  app.add_flag("--timing", g.timing, "Add wall-clock timing to the report");
  app.set_version_flag("--version", std::string(ct_version()));

  std::optional<Run> run;
  std::string input, out, dot, json_out, base, region, vertex, tree, item, dir = ".";
  std::vector<std::string> emit;
  int radius = 1, wall_radius = 1, rho = 2, depth = 2;
  bool color = false, probe = false, modify = false;
  std::uint64_t samples = 500, seed = 7, budget = 200000;

  auto complex_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("complex", input, "Complex file")->required()->check(CLI::ExistingFile);
    return sub;
  };

  CLI::App* npc = complex_command("check-npc", "Link condition at every vertex");
  npc->callback([&] {
    run = Run{"check-npc", {input}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                Text rep;
                const int s = check(ct_check_npc(x.p, rep.out()));
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* sub = complex_command("subdivide", "Barycentric subdivision");
  sub->add_option("--out", out, "Subdivided complex file");
  sub->callback([&] {
    run = Run{"subdivide", {input}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                Text c, rep;
                const int s = check(ct_subdivide(x.p, c.out(), rep.out()));
                maybe_write(out, c);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* hyp = complex_command("hyperplanes", "Wall table and crossing graph");
  hyp->add_option("--dot", dot, "Crossing graph in DOT");
  hyp->callback([&] {
    run = Run{"hyperplanes", {input}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                Text rep, d;
                const int s = check(ct_hyperplanes(x.p, rep.out(), dot.empty() ? nullptr : d.out()));
                maybe_write(dot, d);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* spc = complex_command("special", "Hyperplane pathologies");
  spc->callback([&] {
    run = Run{"special", {input}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                Text rep;
                const int s = check(ct_special(x.p, rep.out()));
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* ball = complex_command("cover-ball", "Ball in the universal cover");
  ball->add_option("--base", base, "Base vertex")->required();
  ball->add_option("--radius", radius, "Edge radius")->check(CLI::NonNegativeNumber);
  ball->add_option("--out", out, "Ball complex file");
  ball->callback([&] {
    run = Run{"cover-ball", {input}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                Text b, rep;
                const int s = check(ct_cover_ball(x.p, base.c_str(), radius, b.out(), rep.out()));
                maybe_write(out, b);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* gate = complex_command("gate", "Gate of a vertex onto a region of half-spaces");
  gate->add_option("--region", region, "Region file")->required()->check(CLI::ExistingFile);
  gate->add_option("--vertex", vertex, "Vertex")->required();
  gate->callback([&] {
    run = Run{"gate", {input, region}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                const std::string reg = read_file(region);
                Text rep;
                const int s = check(ct_gate(x.p, reg.c_str(), vertex.c_str(), rep.out()));
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* wg = complex_command("wall-graph", "Walls joined within distance R");
  wg->add_option("--R", wall_radius, "Distance threshold")->check(CLI::NonNegativeNumber);
  wg->add_flag("--color", color, "Greedy coloring");
  wg->add_option("--dot", dot, "Wall graph in DOT");
  wg->add_option("--json", json_out, "Copy of the report");
  wg->callback([&] {
    run = Run{"wall-graph", {input}, [&](Json& r) {
                ComplexHandle x;
                load_complex(input, x);
                Text rep, d;
                const int s = check(ct_wall_graph(x.p, wall_radius, color, rep.out(), dot.empty() ? nullptr : d.out()));
                maybe_write(dot, d);
                maybe_write(json_out, rep);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* comp = app.add_subcommand("complete", "Canonical completion of a local isometry");
  comp->add_option("map", input, "Map file; domain and codomain are read from <name>.json beside it")
      ->required()
      ->check(CLI::ExistingFile);
  comp->add_option("--out", out, "Completion complex file");
  comp->add_option("--emit", emit, "Inclusion, retraction and projection map files")->expected(3);
  comp->callback([&] {
    run = Run{"complete", {input}, [&](Json& r) {
                MapHandle f;
                check(ct_map_load(input.c_str(), &f.p));
                Text c, j, rt, p, rep;
                const bool maps = emit.size() == 3;
                const int s = check(ct_complete(f.p, c.out(), maps ? j.out() : nullptr, maps ? rt.out() : nullptr,
                                                maps ? p.out() : nullptr, rep.out()));
                maybe_write(out, c);
                if (maps) {
                  maybe_write(emit[0], j);
                  maybe_write(emit[1], rt);
                  maybe_write(emit[2], p);
                }
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* fun = app.add_subcommand("functorial", "Completion of a commuting square");
  fun->add_option("square", input, "Square file naming the maps f, s, g, t")->required()->check(CLI::ExistingFile);
  fun->callback([&] {
    run = Run{"functorial", {input}, [&](Json& r) {
                Text rep;
                const int s = check(ct_functorial(input.c_str(), rep.out()));
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* cus = app.add_subcommand("cusped", "Truncated cusped space of a group");
  cus->add_option("group", input, "Group file")->required()->check(CLI::ExistingFile);
  cus->add_option("--rho", rho, "Cayley ball radius")->check(CLI::NonNegativeNumber);
  cus->add_option("--depth", depth, "Horoball depth")->check(CLI::NonNegativeNumber);
  cus->add_flag("--probe", probe, "Estimate thinness of triangles");
  cus->add_option("--samples", samples, "Sampled triples, 0 for all");
  cus->add_option("--seed", seed, "Sampling seed");
  cus->add_option("--budget", budget, "Vertex budget");
  cus->add_option("--out", out, "Ball file");
  cus->callback([&] {
    run = Run{"cusped", {input}, [&](Json& r) {
                const std::string group = read_file(input);
                Text b, rep;
                const int s = check(ct_cusped(group.c_str(), rho, depth, probe, samples, seed, budget,
                                              out.empty() ? nullptr : b.out(), rep.out()));
                maybe_write(out, b);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* gog = app.add_subcommand("gog", "Graphs of groups");
  gog->require_subcommand(1);
  CLI::App* pi1 = gog->add_subcommand("pi1", "Presentation of the fundamental group");
  pi1->add_option("gog", input, "Graph of groups file")->required()->check(CLI::ExistingFile);
  pi1->add_option("--base", base, "Base vertex")->required();
  pi1->add_option("--tree", tree, "Spanning tree edges, comma separated");
  pi1->add_option("--out", out, "Presentation file");
  pi1->callback([&] {
    run = Run{"gog", {input}, [&](Json& r) {
                const std::string text = read_file(input);
                Text p, rep;
                const int s = check(ct_gog_pi1(text.c_str(), base.c_str(), tree.c_str(), p.out(), rep.out()));
                maybe_write(out, p);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* glue = app.add_subcommand("gluing-check", "Balance of a hierarchy ledger");
  glue->add_option("ledger", input, "Ledger file")->required()->check(CLI::ExistingFile);
  glue->add_flag("--modify", modify, "Also check the virtually modified ledger");
  glue->add_option("--out", out, "Modified ledger file");
  glue->callback([&] {
    run = Run{"gluing-check", {input}, [&](Json& r) {
                const std::string text = read_file(input);
                Text m, rep;
                const int s = check(ct_gluing_check(text.c_str(), modify, out.empty() ? nullptr : m.out(), rep.out()));
                maybe_write(out, m);
                r = parse_report(rep);
                return s;
              }};
  });

  CLI::App* corpus = app.add_subcommand("corpus", "Built-in examples");
  corpus->require_subcommand(1);
  CLI::App* list = corpus->add_subcommand("list", "Item names");
  list->callback([&] {
    run = Run{"corpus", {}, [&](Json& r) {
                Text t;
                const int s = check(ct_corpus_list(t.out()));
                r = parse_report(t);
                r["command"] = "corpus";
                return s;
              }};
  });
  CLI::App* em = corpus->add_subcommand("emit", "Write an item's files");
  em->add_option("name", item, "Item name")->required();
  em->add_option("--dir", dir, "Output directory");
  em->callback([&] {
    run = Run{"corpus", {}, [&](Json& r) {
                Text t;
                const int s = check(ct_corpus_emit(item.c_str(), t.out()));
                const Json files = parse_report(t).at("files");
                std::filesystem::create_directories(dir);
                Json written = Json::array();
                for (const auto& f : files) {
                  const std::string path = (std::filesystem::path(dir) / f.at("filename").get<std::string>()).string();
                  const std::string content = f.at("content").get<std::string>();
                  write_file(path, content);
                  written.push_back({{"path", path}, {"digest", digest(content)}});
                }
                r = {{"command", "corpus"}, {"item", item}, {"files", written}};
                return s;
              }};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }
  if (!run) return kExitError;
  return execute(*run, g);
}
