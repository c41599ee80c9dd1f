#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubetool/error.hpp"

namespace cubetool {

using CubeIndex = std::int32_t;

// Corners of a d-cube are indexed by integers whose bit i is the coordinate
// along axis i. A CornerMap sends the corner indices of a sub-cube (or of a
// domain cube) to corner indices of the ambient (or target) cube.
using CornerMap = std::vector<int>;

// Face patterns: one entry per axis, kFree or a fixed coordinate 0/1.
using Pattern = std::vector<std::int8_t>;
inline constexpr std::int8_t kFree = -1;

struct Cube {
  std::string id;
  int dim = 0;
  // (axis 0,-), (axis 0,+), (axis 1,-), ...
  std::vector<std::string> faces;
  std::vector<std::string> corners;
  // Optional attaching data, one entry per face. Entry m of face (i,s) says
  // which of the remaining axes of this cube the face's axis m runs along:
  // k >= 0 for the k-th remaining axis, ~k for the same axis reflected.
  // Empty means every face is attached by the identity.
  std::vector<std::vector<int>> orient;
};

struct CubeComplexDescription {
  std::string name;
  int dim_cap = 3;
  std::vector<Cube> cubes;
};

struct EdgeEnd {
  CubeIndex edge = -1;
  int end = 0;

  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

struct Incidence {
  CubeIndex cube = -1;
  int corner = 0;
};

// A validated finite cube complex. Immutable; cubes are stored sorted by
// (dim, id) so that every index-based iteration is deterministic.
class CubeComplex {
 public:
  // Throws Error{kMalformedComplex} naming the first violated invariant, or
  // Error{kDimensionCapExceeded} for cubes above the cap.
  static CubeComplex validate(CubeComplexDescription raw);
  // All violations, empty for a valid description.
  static std::vector<std::string> violations(const CubeComplexDescription& raw);

  const std::string& name() const { return name_; }
  int dim_cap() const { return dim_cap_; }
  int dim() const { return max_dim_; }
  std::size_t size() const { return cubes_.size(); }

  const Cube& cube(CubeIndex c) const { return cubes_[static_cast<std::size_t>(c)]; }
  const std::string& id(CubeIndex c) const { return cube(c).id; }
  int dim(CubeIndex c) const { return cube(c).dim; }
  const std::vector<Cube>& cubes() const { return cubes_; }

  std::optional<CubeIndex> find(std::string_view id) const;
  // Throws Error{kUnknownVertex} if the id is not a 0-cube.
  CubeIndex vertex_index(std::string_view id) const;

  std::span<const CubeIndex> cubes_of_dim(int d) const;
  std::span<const CubeIndex> vertices() const { return cubes_of_dim(0); }
  std::span<const CubeIndex> edges() const { return cubes_of_dim(1); }
  std::size_t count(int d) const { return cubes_of_dim(d).size(); }

  CubeIndex face(CubeIndex c, int axis, int side) const {
    return face_index_[static_cast<std::size_t>(c)][static_cast<std::size_t>(2 * axis + side)];
  }
  // Corner map of facet (axis, side) into c.
  const CornerMap& attach(CubeIndex c, int axis, int side) const {
    return attach_[static_cast<std::size_t>(c)][static_cast<std::size_t>(2 * axis + side)];
  }
  CubeIndex corner(CubeIndex c, int pos) const {
    return corner_index_[static_cast<std::size_t>(c)][static_cast<std::size_t>(pos)];
  }
  const std::vector<CubeIndex>& corners(CubeIndex c) const {
    return corner_index_[static_cast<std::size_t>(c)];
  }

  struct Resolved {
    CubeIndex cube = -1;
    CornerMap corners;  // resolved cube corners -> corners of the queried cube
  };
  // The cube of this complex carrying the face `pattern` of cube c.
  Resolved resolve(CubeIndex c, const Pattern& pattern) const;

  // The end of the edge leaving corner `pos` of c along `axis`.
  EdgeEnd edge_end(CubeIndex c, int pos, int axis) const {
    return edge_ends_[static_cast<std::size_t>(c)][static_cast<std::size_t>(pos * dim(c) + axis)];
  }

  // Every (cube, corner) with that corner at vertex v, cubes of dim >= 1.
  const std::vector<Incidence>& incidences(CubeIndex v) const {
    return incidences_[static_cast<std::size_t>(v)];
  }
  // Edge-ends at v; a loop contributes both of its ends.
  std::vector<EdgeEnd> edge_ends_at(CubeIndex v) const;

  // Cubes having c as a facet.
  const std::vector<CubeIndex>& cofaces(CubeIndex c) const {
    return cofaces_[static_cast<std::size_t>(c)];
  }

  CubeComplexDescription description() const;

 private:
  CubeComplex() = default;
  void build_derived();

  std::string name_;
  int dim_cap_ = 3;
  int max_dim_ = -1;
  std::vector<Cube> cubes_;
  std::unordered_map<std::string, CubeIndex> by_id_;
  std::vector<std::size_t> dim_offsets_;
  std::vector<CubeIndex> all_indices_;
  std::vector<std::vector<CubeIndex>> face_index_;
  std::vector<std::vector<CornerMap>> attach_;
  std::vector<std::vector<CubeIndex>> corner_index_;
  std::vector<std::vector<EdgeEnd>> edge_ends_;
  std::vector<std::vector<Incidence>> incidences_;
  std::vector<std::vector<CubeIndex>> cofaces_;
};

// Attaching corner map of one facet given its orient entry (empty = identity).
CornerMap facet_corner_map(int dim, int axis, int side, const std::vector<int>& orient);
// Identity orient entry for a facet of a dim-cube.
std::vector<int> identity_orient(int dim);
bool is_identity_orient(const std::vector<int>& orient);

// ---- links and curvature -------------------------------------------------

struct LinkSimplex {
  CubeIndex cube = -1;
  int corner = 0;
  std::vector<int> vertices;  // indices into VertexLink::link_vertices, axis order
};

struct VertexLink {
  CubeIndex vertex = -1;
  std::vector<EdgeEnd> link_vertices;
  std::vector<LinkSimplex> simplices;

  int index_of(const EdgeEnd& e) const;
  // Whether two link vertices span a 1-simplex.
  bool adjacent(int a, int b) const;
};

// Throws Error{kUnknownVertex}.
VertexLink link(const CubeComplex& x, CubeIndex v);
VertexLink link(const CubeComplex& x, std::string_view v);

enum class NpcFailure { kNone, kRepeatedVertex, kDuplicateSimplex, kEmptyClique };
const char* npc_failure_name(NpcFailure f);

struct NpcVerdict {
  bool npc = true;
  NpcFailure failure = NpcFailure::kNone;
  CubeIndex vertex = -1;
  std::vector<EdgeEnd> witness;  // degenerate simplex or empty clique
};

NpcVerdict is_npc(const CubeComplex& x);
NpcVerdict vertex_npc(const CubeComplex& x, const VertexLink& lk);

// ---- constructions -------------------------------------------------------

struct Subdivision {
  CubeComplex complex;
  // new cube id -> (original cube id, face pattern over its axes: '0','1','*')
  std::map<std::string, std::pair<std::string, std::string>> correspondence;
};

Subdivision barycentric_subdivision(const CubeComplex& x);
std::string subdivision_cube_id(const std::string& cube, const Pattern& fixed);

// Adds, round by round, the unique cube filling every complete empty cube
// frame visible in some vertex link. Throws Error{kDimensionCapExceeded}.
CubeComplex flag_complete(const CubeComplex& x);

// The subcomplex made of the given cubes and all their faces.
CubeComplex closure(const CubeComplex& x, std::span<const CubeIndex> cubes, std::string name);
// Cubes of dimension <= d.
CubeComplex skeleton(const CubeComplex& x, int d);

// Component number of every vertex (by least vertex index), -1 on other cubes.
std::vector<int> vertex_components(const CubeComplex& x, int* count = nullptr);

// Deterministic face patterns of a d-cube, in order of increasing number of
// free axes and then lexicographically.
std::vector<Pattern> all_patterns(int dim);
std::string pattern_string(const Pattern& p);

}  // namespace cubetool
