#pragma once

#include <string>
#include <vector>

#include "cubetool/complex.hpp"
#include "cubetool/cubical_map.hpp"

namespace cubetool {

struct Midcube {
  CubeIndex cube = -1;
  int axis = 0;

  friend bool operator==(const Midcube&, const Midcube&) = default;
  friend auto operator<=>(const Midcube&, const Midcube&) = default;
};

struct Wall {
  int id = 0;
  std::vector<Midcube> midcubes;     // sorted
  std::vector<CubeIndex> dual_edges;  // sorted
  std::vector<CubeIndex> carrier;     // sorted, cubes containing a midcube
};

// Walls numbered in order of their least dual edge.
class WallSet {
 public:
  explicit WallSet(const CubeComplex& x);

  const std::vector<Wall>& walls() const { return walls_; }
  std::size_t size() const { return walls_.size(); }
  const Wall& wall(int w) const { return walls_[static_cast<std::size_t>(w)]; }
  int wall_of(CubeIndex c, int axis) const {
    return midcube_wall_[offset_[static_cast<std::size_t>(c)] + static_cast<std::size_t>(axis)];
  }
  // Wall dual to an edge.
  int wall_of_edge(CubeIndex e) const { return wall_of(e, 0); }

 private:
  std::vector<Wall> walls_;
  std::vector<std::size_t> offset_;
  std::vector<int> midcube_wall_;
};

struct SidednessCertificate {
  int wall = 0;
  bool two_sided = true;
  // Parallel to Wall::dual_edges: the end of each dual edge on the W- side.
  std::vector<int> initial_end;
  // One-sided: constraint cycle with odd total parity, as "cube:edge" steps.
  std::vector<std::string> odd_cycle;

  int initial_of(const Wall& w, CubeIndex edge) const;
};

SidednessCertificate sidedness(const CubeComplex& x, const WallSet& ws, int wall);

struct WallFlags {
  int wall = 0;
  bool self_crossing = false;
  bool one_sided = false;
  bool direct_self_osculation = false;
  std::vector<std::string> witness;
};

struct InterOsculation {
  int wall_a = 0;
  int wall_b = 0;
  std::string vertex;
  std::vector<std::string> witness;
};

struct SpecialnessReport {
  std::vector<WallFlags> walls;
  std::vector<InterOsculation> inter_osculations;
  bool special = true;
};

// Works on any valid complex; link adjacency is read off the squares.
SpecialnessReport pathologies(const CubeComplex& x);
SpecialnessReport pathologies(const CubeComplex& x, const WallSet& ws);

// Throws Error{kRequiresTwoSided} on a one-sided wall. Returns the witness
// edge-ends, empty when the wall does not directly self-osculate.
std::vector<std::string> direct_self_osculation(const CubeComplex& x, const WallSet& ws, int wall);

// Lifts a self-map of X to its subdivision.
CubicalMap lift_to_subdivision(const CubicalMap& g, const ComplexPtr& subdivided);

struct CoOrientation {
  ComplexPtr complex;
  std::vector<std::vector<int>> initial_end;  // per wall of the subdivision
  bool equivariant = true;
  // (automorphism index, wall) pairs where the lift exchanges sides.
  std::vector<std::pair<int, int>> flips;
};

// Equivariant co-orientation of the walls of x for the given self-maps of x.
// Throws Error{kOneSidedWall}.
CoOrientation co_orient(const ComplexPtr& x, const std::vector<CubicalMap>& autos);
// The same on the subdivision, with the self-maps of x lifted.
CoOrientation co_orient_subdivision(const CubeComplex& x, const std::vector<CubicalMap>& autos);

}  // namespace cubetool
