#include "cubetool/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cubetool {

namespace {

[[noreturn]] void bad(ErrorCode code, const std::string& what) { throw Error(code, what); }

template <typename T>
T field(const Json& j, const char* key, ErrorCode code) {
  if (!j.contains(key)) bad(code, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(code, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

CubeComplexDescription complex_description_from_json(const Json& j) {
  const auto code = ErrorCode::kMalformedComplex;
  if (!j.is_object()) bad(code, "complex must be a JSON object");
  CubeComplexDescription d;
  d.name = j.contains("name") ? field<std::string>(j, "name", code) : std::string("unnamed");
  if (j.contains("dim_cap")) d.dim_cap = field<int>(j, "dim_cap", code);
  if (!j.contains("cubes") || !j.at("cubes").is_array()) bad(code, "missing array 'cubes'");
  for (const Json& cj : j.at("cubes")) {
    if (!cj.is_object()) bad(code, "cube must be an object");
    Cube c;
    c.id = field<std::string>(cj, "id", code);
    c.dim = field<int>(cj, "dim", code);
    c.faces = cj.contains("faces") ? field<std::vector<std::string>>(cj, "faces", code)
                                   : std::vector<std::string>{};
    c.corners = cj.contains("corners") ? field<std::vector<std::string>>(cj, "corners", code)
                                       : std::vector<std::string>{};
    if (c.dim == 0 && c.corners.empty() && !cj.contains("corners")) c.corners = {c.id};
    if (cj.contains("orient")) c.orient = field<std::vector<std::vector<int>>>(cj, "orient", code);
    d.cubes.push_back(std::move(c));
  }
  return d;
}

CubeComplex complex_from_json(const Json& j) {
  return CubeComplex::validate(complex_description_from_json(j));
}

Json description_to_json(const CubeComplexDescription& d) {
  Json j;
  j["name"] = d.name;
  j["dim_cap"] = d.dim_cap;
  Json cubes = Json::array();
  for (const Cube& c : d.cubes) {
    Json cj;
    cj["id"] = c.id;
    cj["dim"] = c.dim;
    cj["faces"] = c.faces;
    cj["corners"] = c.corners;
    bool plain = true;
    for (const auto& e : c.orient) plain = plain && is_identity_orient(e);
    if (!c.orient.empty() && !plain) cj["orient"] = c.orient;
    cubes.push_back(std::move(cj));
  }
  j["cubes"] = std::move(cubes);
  return j;
}

Json complex_to_json(const CubeComplex& x) { return description_to_json(x.description()); }

CubicalMapDescription map_description_from_json(const Json& j) {
  const auto code = ErrorCode::kMalformedMap;
  if (!j.is_object()) bad(code, "map must be a JSON object");
  CubicalMapDescription d;
  if (j.contains("domain") && j.at("domain").is_string()) d.domain = j.at("domain").get<std::string>();
  if (j.contains("codomain") && j.at("codomain").is_string()) d.codomain = j.at("codomain").get<std::string>();
  d.cube_images = field<std::map<std::string, std::string>>(j, "cube_images", code);
  if (j.contains("collapses")) d.collapses = field<std::map<std::string, std::vector<int>>>(j, "collapses", code);
  if (j.contains("axes")) d.axes = field<std::map<std::string, std::vector<int>>>(j, "axes", code);
  return d;
}

Json map_description_to_json(const CubicalMapDescription& d) {
  Json j;
  j["domain"] = d.domain;
  j["codomain"] = d.codomain;
  j["cube_images"] = d.cube_images;
  j["collapses"] = d.collapses.empty() ? Json::object() : Json(d.collapses);
  if (!d.axes.empty()) j["axes"] = d.axes;
  return j;
}

Json map_to_json(const CubicalMap& f) { return map_description_to_json(f.description()); }

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kMalformedInput, "cannot write " + path);
  out << text;
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cubetool
