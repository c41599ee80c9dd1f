#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cubetool {

using Element = std::vector<int>;

enum class GroupKind { kCyclic, kFree, kFreeAbelian, kPermutation };

struct Generator {
  std::string name;
  Element element;
};

struct Peripheral {
  std::string name;
  std::vector<std::string> generators;  // names in the group's generating set
};

// A group given by canonical forms: cyclic of order m (m = 0 for the
// integers), free and free abelian of a given rank, or permutations of
// {0..degree-1}. The generating set is closed under inverses.
class GroupOracle {
 public:
  static GroupOracle cyclic(int order, const std::vector<Generator>& generators);
  static GroupOracle free(int rank);
  static GroupOracle free_abelian(int rank);
  static GroupOracle permutation(int degree, const std::vector<Generator>& generators);

  GroupKind kind() const { return kind_; }
  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;
  bool is_identity(const Element& a) const { return a == identity(); }
  std::string format(const Element& a) const;
  // Generators sorted by name, inverses included.
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(const std::string& name) const;

  // Key shared by exactly the elements of the left coset g<gens>. Throws
  // Error{kMalformedInput} when the subgroup is not one the oracle can
  // decide: in free and free abelian groups it must be spanned by basis
  // generators.
  std::string coset_key(const Element& g, const std::vector<std::string>& subgroup_generators) const;

 private:
  void close_generators();

  GroupKind kind_ = GroupKind::kCyclic;
  int size_ = 0;  // order, rank or degree
  std::vector<Generator> generators_;
};

// Identity, inverse and associativity laws on all triples of the given
// elements. Throws Error{kOracleInconsistent}.
void check_group_laws(const GroupOracle& g, const std::vector<Element>& sample);

// S_0 = seed minus the identity, S_n = S_{n-1} plus the non-trivial products
// of two of its elements. Sets are sorted by canonical form.
std::vector<std::vector<Element>> doubling_sets(const GroupOracle& g, const std::vector<Element>& seed, int n);

struct GroupSpec {
  GroupOracle group;
  std::vector<Peripheral> peripherals;
};

// {"kind": "cyclic", "order": 3, "generators": {"t": [1]},
//  "peripherals": [{"name": "P", "generators": ["t"]}]}. Free groups take
// "rank" and name their basis a, b, ... with inverses A, B, ...; permutation
// groups take "degree". Throws Error{kMalformedInput}.
GroupSpec group_from_json(const nlohmann::json& j);

enum class CuspedEdgeKind { kCayley, kVertical, kHorizontal };
const char* cusped_edge_kind_name(CuspedEdgeKind k);

struct CuspedVertex {
  std::string name;  // element, or "<element>/<peripheral>@<level>" above level 0
  Element element;
  int depth = 0;
  int coset = -1;  // horoball index above level 0
};

struct CuspedEdge {
  int u = 0;
  int v = 0;
  CuspedEdgeKind kind = CuspedEdgeKind::kCayley;
  int level = 0;
  std::string label;  // generator name, or the horizontal step
};

struct Coset {
  std::string name;  // "<peripheral>:<key>"
  int peripheral = 0;
  std::vector<int> base;  // level-0 vertices, in ball order
};

struct Graph {
  std::vector<std::string> names;
  std::vector<std::vector<int>> adjacency;  // parallel edges repeated
};

struct CuspedBall {
  int rho = 0;
  int depth = 0;
  std::vector<CuspedVertex> vertices;
  std::vector<CuspedEdge> edges;
  std::vector<Coset> cosets;
  std::vector<std::vector<std::vector<Element>>> doubling;  // per peripheral, S_0..S_depth
  // Edges (v, s) whose far end lies outside the ball.
  std::size_t uncertified_edges = 0;

  Graph graph() const;
  std::size_t count(CuspedEdgeKind k) const;
};

// Cayley ball of radius rho, with horoballs over every coset meeting it up
// to the given depth. A horoball's vertices at each level are the elements
// of its coset inside the Cayley ball. Edge (v, s) and edge (vs, s^-1) are
// one edge unless s = s^-1; level-0 horizontal edges are the Cayley edges.
// Throws Error{kBallBudgetExceeded} past max_vertices, or
// Error{kMalformedInput} for a peripheral with an unknown generator.
CuspedBall build_cusped_ball(const GroupSpec& spec, int rho, int depth, std::size_t max_vertices = 200000);

struct Horoball {
  std::string coset;
  int min_depth = 0;
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // sorted, both ends inside
};

// Full subgraph on the coset's vertices at depth >= r. Throws
// Error{kUnknownCoset} or Error{kMalformedInput} for r outside [0, depth].
Horoball horoball(const CuspedBall& ball, const std::string& coset, int r);

struct SlimOptions {
  bool exhaustive = true;
  std::size_t samples = 500;
  std::uint64_t seed = 7;
};

struct SlimReport {
  // Largest distance from a point of one side of a triangle to the other two
  // sides, where a side is the union of all geodesics between its ends.
  int delta = 0;
  std::vector<std::string> worst;  // the triangle's corners
  // Largest (s1 - s2) / 2 over quadruples, with s1 >= s2 the two largest
  // pair-sums of distances.
  double four_point = 0.0;
  std::size_t triples = 0;
  std::size_t quadruples = 0;
};

// Triples and quadruples are exhaustive when requested (quadruples only up
// to 60 vertices), sampled otherwise. Unreachable triples are skipped.
// Throws Error{kBudgetExceeded} above 4000 vertices.
SlimReport slim_probe(const Graph& g, const SlimOptions& options = {});

}  // namespace cubetool
