#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubetool/complex.hpp"
#include "cubetool/geometry.hpp"
#include "cubetool/hyperplanes.hpp"

namespace cubetool {

// Walls of a complex joined when their carriers are within distance R.
struct WallGraph {
  int radius = 0;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor lists, per wall id
  int max_degree = 0;
  std::size_t edge_count = 0;

  std::size_t size() const { return adjacency.size(); }
  bool adjacent(int u, int v) const;
};

// Edge-metric distance between the carrier vertex sets of every pair of
// walls; -1 when they lie in different components.
std::vector<std::vector<int>> wall_distances(const CubeComplex& x, const WallSet& ws);

WallGraph wall_graph(const CubeComplex& x, const WallSet& ws, int radius);
WallGraph wall_graph(const CubeComplex& x, int radius);

// Colors 1..k+1 per wall id.
using Coloring = std::vector<int>;

// Smallest free color, walls in ascending id order.
Coloring greedy_color(const WallGraph& g);
bool is_proper(const WallGraph& g, const Coloring& c);
// Walls within graph distance r of the center, sorted.
std::vector<int> graph_ball(const WallGraph& g, int center, int r);

// c and c2 agree on the ball of radius c(W) about W. Throws
// Error{kUnknownWall} or Error{kMalformedInput} for a coloring of the wrong
// size.
bool class_equal(const Coloring& c, const Coloring& c2, const WallGraph& g, int wall);
bool class_edge(const Coloring& c, const Coloring& c2, const WallGraph& g, const WallSet& ws, CubeIndex edge);
// Conjunction of class_edge over the edges at v.
bool class_vertex(const Coloring& c, const Coloring& c2, const WallGraph& g, const CubeComplex& x,
                  const WallSet& ws, CubeIndex v);

// The coloring W -> c(g^-1 W) for a permutation of wall ids.
Coloring pullback(const Coloring& c, const std::vector<int>& wall_permutation);

struct RegionConditionReport {
  std::size_t internal_edges = 0;
  std::size_t boundary_edges = 0;
  // Color of each boundary wall, read at any of its dual edges leaving the
  // region.
  std::map<int, int> boundary_colors;
  bool boundary_colors_well_defined = true;
  std::vector<std::string> color_conflicts;  // "wall:edge:edge"
  // Region vertices with two outgoing edges dual to walls of color j.
  std::vector<std::string> double_incidences;
};

// One coloring per region vertex. Checks, per edge at a region vertex x,
// that its far end lies in the region iff c_x(W(e)) > j, and that the two
// ends of an internal edge carry colorings in the same class at it. Throws
// Error{kConditionViolated} with details {"1"|"2", edge id}, or
// Error{kEmptyRegion}, Error{kMalformedInput} for a missing coloring.
RegionConditionReport verify_region_conditions(const CubeComplex& x, const WallSet& ws, const WallGraph& g,
                                               const VertexSet& region,
                                               const std::map<CubeIndex, Coloring>& colorings, int j);

}  // namespace cubetool
