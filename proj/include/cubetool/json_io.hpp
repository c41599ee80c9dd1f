#pragma once

#include <string>

#include <json.hpp>

#include "cubetool/complex.hpp"
#include "cubetool/cubical_map.hpp"

namespace cubetool {

using Json = nlohmann::json;

// Schema errors raise Error{kMalformedComplex}; validation happens separately.
CubeComplexDescription complex_description_from_json(const Json& j);
CubeComplex complex_from_json(const Json& j);
Json complex_to_json(const CubeComplex& x);
Json description_to_json(const CubeComplexDescription& d);

// Schema errors raise Error{kMalformedMap}.
CubicalMapDescription map_description_from_json(const Json& j);
Json map_to_json(const CubicalMap& f);
Json map_description_to_json(const CubicalMapDescription& d);

// Two-space indented dump with a trailing newline. Object keys are sorted by
// nlohmann::json itself, so equal values give equal bytes.
std::string canonical_dump(const Json& j);

// Throws Error{kMalformedInput} when unreadable or not JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// FNV-1a 64, rendered as 16 hex digits.
std::string digest_hex(const std::string& bytes);

}  // namespace cubetool
