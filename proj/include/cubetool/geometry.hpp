#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubetool/complex.hpp"
#include "cubetool/cubical_map.hpp"
#include "cubetool/hyperplanes.hpp"

namespace cubetool {

// Sorted vertex indices.
using VertexSet = std::vector<CubeIndex>;
// Sorted cube indices closed under taking faces.
using Subcomplex = std::vector<CubeIndex>;

struct Neighbor {
  CubeIndex vertex = -1;
  CubeIndex edge = -1;
};

// Per vertex index, the neighbors in edge-end order; empty for other cubes.
std::vector<std::vector<Neighbor>> vertex_adjacency(const CubeComplex& x);
// Edge-metric distances from v, indexed by cube index; -1 when unreachable
// or not a vertex.
std::vector<int> distances_from(const CubeComplex& x, CubeIndex v);
// Throws Error{kUnknownVertex} or Error{kDisconnected}.
int distance(const CubeComplex& x, std::string_view u, std::string_view v);

struct CoverBall {
  ComplexPtr base;
  ComplexPtr total;
  CubicalMap covering_map;
  std::string basepoint;  // vertex id in total
  int radius = 0;
  std::vector<int> depth;  // distance to the basepoint, per cube index of total
};

// Develops the universal cover of x from v0 out to edge distance r. Vertex
// ids are "<base vertex>@<word>", where the word is the least shortest path
// from the basepoint, steps "<edge>+" or "<edge>-" joined by '.', and "o"
// for the empty word. Every other cube is named after the lift of its
// corner 0. Throws Error{kNotNpc}.
CoverBall universal_cover_ball(const ComplexPtr& x, std::string_view v0, int r);

struct ConvexVerdict {
  bool convex = true;
  // False when the pair budget ran out before a witness was found.
  bool complete = true;
  std::size_t pairs_checked = 0;
  // (u, v, w) with w on a geodesic from u to v outside the set, or the id of a
  // cube missing for fullness.
  std::vector<std::string> witness;
};

// Cells closed under faces. A set of vertices stands for the full subcomplex
// it spans; otherwise every cube with all corners in the set must be present.
ConvexVerdict is_convex(const CubeComplex& x, const std::vector<CubeIndex>& cells,
                        std::size_t pair_budget = 1000000);

Subcomplex full_subcomplex(const CubeComplex& x, const VertexSet& vertices);
// Cubes containing the given cubes, with their faces.
Subcomplex star(const CubeComplex& x, const std::vector<CubeIndex>& cells);
// k-fold cubical neighborhood of a set of cells.
Subcomplex cubical_neighborhood(const CubeComplex& x, const std::vector<CubeIndex>& cells, int k);
// k-fold cubical neighborhood of a wall; the first step is its carrier.
Subcomplex wall_neighborhood(const CubeComplex& x, const WallSet& ws, int wall, int k);
VertexSet vertices_of(const CubeComplex& x, const std::vector<CubeIndex>& cells);

// Sides of every wall, by crossing parity along paths from a root vertex.
// The minus side holds the initial ends of the wall's dual edges.
class WallSides {
 public:
  WallSides(const CubeComplex& x, const WallSet& ws, CubeIndex root);

  // -1 or +1; 0 outside the root's component.
  int side(int wall, CubeIndex v) const;
  bool reached(CubeIndex v) const { return !parity_[static_cast<std::size_t>(v)].empty(); }
  // False when some cycle crosses the wall an odd number of times.
  bool consistent(int wall) const { return consistent_[static_cast<std::size_t>(wall)]; }
  const WallSet& walls() const { return *ws_; }
  CubeIndex root() const { return root_; }
  // Walls w with side(w,u) != side(w,v).
  std::vector<int> separating(CubeIndex u, CubeIndex v) const;

 private:
  const WallSet* ws_;
  CubeIndex root_;
  std::vector<std::vector<std::uint8_t>> parity_;  // per vertex index, per wall
  std::vector<std::uint8_t> flip_;
  std::vector<bool> consistent_;
};

struct Halfspace {
  int wall = 0;
  int side = -1;
  VertexSet vertices;
};

struct HalfspacePair {
  Halfspace minus;
  Halfspace plus;
  // Some dual edge has an endpoint on the truncation sphere.
  bool touches_boundary = false;
};

// Throws Error{kUnknownWall}.
HalfspacePair halfspaces(const CubeComplex& x, const WallSides& sides, int wall);
HalfspacePair halfspaces(const CoverBall& ball, const WallSides& sides, int wall);

struct Region {
  std::vector<std::pair<int, int>> halfspaces;  // (wall, side)
  VertexSet vertices;
  Subcomplex cubes;
};

// Throws Error{kEmptyRegion} or Error{kUnknownWall}.
Region region_from_halfspaces(const CubeComplex& x, const WallSides& sides,
                              const std::vector<std::pair<int, int>>& halfspaces);

struct GateResult {
  CubeIndex gate = -1;
  std::vector<int> separating_walls;  // walls separating the vertex from the region
};

// Nearest vertex of a convex vertex set, checked against the separating-wall
// characterization. Throws Error{kNotConvex}, Error{kAmbiguous} when the
// nearest vertex is not unique, Error{kInternal} when the check fails.
GateResult gate(const CubeComplex& x, const WallSides& sides, const VertexSet& region, CubeIndex v);

struct Portal {
  int wall = 0;
  int color = 0;
  // Midcubes of the wall whose face on the region's side lies in the region.
  std::vector<Midcube> cells;
  // Dual edges with exactly one endpoint in the region.
  std::vector<CubeIndex> dual_edges;
};

struct BoundaryReport {
  std::vector<int> boundary_walls;
  std::vector<Portal> portals;  // boundary walls of color j
  // Region vertices incident at two distinct outgoing edges dual to walls of
  // color j, as "vertex:edge:edge".
  std::vector<std::string> double_incidences;
};

// Throws Error{kEmptyRegion}, or Error{kUnknownWall} for an uncolored
// boundary wall.
BoundaryReport boundary_walls(const CubeComplex& x, const WallSet& ws, const VertexSet& region,
                              const std::map<int, int>& colors, int j);

}  // namespace cubetool
