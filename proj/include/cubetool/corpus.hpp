#pragma once

#include <string>
#include <vector>

#include "cubetool/complex.hpp"

namespace cubetool {

// Builders shared by the corpus and the tests.
CubeComplexDescription standard_cube(int n, const std::string& name);
CubeComplexDescription grid_patch(int nx, int ny, const std::string& name);
CubeComplexDescription cycle_graph(int n, const std::string& name);
CubeComplexDescription path_graph(int edges, const std::string& name);
CubeComplexDescription wedge_of_loops(int k, const std::string& name);

struct CorpusFile {
  std::string filename;
  std::string content;
};

std::vector<std::string> corpus_names();
// Names of the items that are a single cube complex.
std::vector<std::string> corpus_complex_names();
// Throws Error{kUnknownCorpusItem}.
std::vector<CorpusFile> corpus_emit(const std::string& name);
CubeComplex corpus_complex(const std::string& name);

}  // namespace cubetool
