#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubetool/complex.hpp"
#include "cubetool/cubical_map.hpp"

namespace cubetool {

struct PreconditionReport {
  bool ok = true;
  bool simplicial = true;
  std::vector<std::string> failures;
};

// Simplicial 1-skeleton, and every wall embedded, two-sided and meeting each
// vertex in at most one dual edge.
PreconditionReport completion_preconditions(const CubeComplex& b);

enum class EdgeKind { kHorizontal, kDiagonal };
const char* edge_kind_name(EdgeKind k);

struct CompletionResult {
  ComplexPtr completion;
  CubicalMap inclusion;   // A -> C
  CubicalMap retraction;  // C -> A
  CubicalMap projection;  // C -> B
  // Per vertex index of C: (vertex index in A, vertex index in B).
  std::map<CubeIndex, std::pair<CubeIndex, CubeIndex>> vertex_pairs;
  std::map<std::string, EdgeKind> edge_kind;
  int degree = 0;
  int components = 0;
};

// Vertices of C are named "<b>@<a>" and the lift of a cube Q of B whose
// corner 0 lies over a is "<Q>@<a>". Cubes above dimension 2 come from flag
// completion. Throws Error{kPreconditionFailed} or
// Error{kCoveringCheckFailed}.
CompletionResult canonical_completion(const CubicalMap& f);

// f: V -> Y, s: V -> Z, g: Z -> X, t: Y -> X with t f = g s.
struct CommutingSquare {
  CubicalMap f;
  CubicalMap s;
  CubicalMap g;
  CubicalMap t;
};

struct ConditionCheck {
  bool ok = true;
  std::string witness;
};

// Conditions (i) to (iv) for the functoriality of the completion, in order.
struct FunctorialConditions {
  std::array<ConditionCheck, 4> conditions;
  bool all_ok() const;
};

// Throws Error{kPreconditionFailed} unless the square commutes and consists
// of local isometries.
FunctorialConditions functorial_conditions(const CommutingSquare& sq);

struct FunctorialResult {
  FunctorialConditions conditions;
  CompletionResult source;  // completion of f
  CompletionResult target;  // completion of g
  CubicalMap hat;           // source completion -> target completion
  bool hat_local_isometry = false;
  // Cells checked in the three commuting diagrams, through dimension 2.
  std::size_t cells_checked = 0;
};

// Throws Error{kConditionFailed} with details {"i"|"ii"|"iii"|"iv", witness},
// or Error{kDiagramFailed}.
FunctorialResult functorial_map(const CommutingSquare& sq);

// First cube of dimension <= max_dim where f and g differ.
std::optional<std::string> cell_difference_upto(const CubicalMap& f, const CubicalMap& g, int max_dim);

}  // namespace cubetool
