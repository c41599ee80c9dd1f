// Random wall graphs, ledgers and graphs of groups, shared by the unit tests
// and the acceptance run.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cubetool/cusped.hpp"
#include "cubetool/gog.hpp"
#include "cubetool/wallgraph.hpp"

namespace proptest {

using namespace cubetool;

inline WallGraph random_wall_graph(std::mt19937_64& rng, int n, int degree_target) {
  WallGraph g;
  g.adjacency.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n * degree_target / 2; ++i) {
    const int u = static_cast<int>(rng() % static_cast<unsigned>(n));
    const int v = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (u == v || g.adjacent(u, v)) continue;
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
      auto& l = g.adjacency[static_cast<std::size_t>(a)];
      l.insert(std::lower_bound(l.begin(), l.end(), b), b);
    }
    ++g.edge_count;
  }
  for (const auto& l : g.adjacency) g.max_degree = std::max(g.max_degree, static_cast<int>(l.size()));
  return g;
}

inline Graph cycle(int n) {
  Graph g;
  g.adjacency.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g.names.push_back("c" + std::to_string(i));
    g.adjacency[static_cast<std::size_t>(i)].push_back((i + 1) % n);
    g.adjacency[static_cast<std::size_t>((i + 1) % n)].push_back(i);
  }
  return g;
}

// Connected; a tree unless `tree` is false, in which case n/2 random chords
// are added.
inline Graph random_connected_graph(std::mt19937_64& rng, int n, bool tree) {
  Graph g;
  g.adjacency.resize(static_cast<std::size_t>(n));
  auto join = [&](int a, int b) {
    g.adjacency[static_cast<std::size_t>(a)].push_back(b);
    g.adjacency[static_cast<std::size_t>(b)].push_back(a);
  };
  for (int i = 0; i < n; ++i) g.names.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) join(static_cast<int>(rng() % static_cast<unsigned>(i)), i);
  if (!tree)
    for (int k = 0; k < n / 2; ++k) {
      const int a = static_cast<int>(rng() % static_cast<unsigned>(n)), b = static_cast<int>(rng() % static_cast<unsigned>(n));
      if (a != b) join(a, b);
    }
  return g;
}

inline Presentation pres(std::vector<std::string> gens, std::vector<std::vector<std::string>> rels = {}) {
  Presentation p{std::move(gens), {}};
  for (const auto& r : rels) p.relators.push_back(parse_word(r));
  return p;
}

inline GroupOracle s3() { return GroupOracle::permutation(3, {{"r", {1, 2, 0}}, {"s", {1, 0, 2}}}); }

// Adds the edge and its reverse "<name>bar".
inline void add_edge(GraphOfGroups& g, const std::string& name, const std::string& from, const std::string& to,
                     const Presentation& group = {}, std::map<std::string, Word> psi = {},
                     std::map<std::string, Word> psi_reverse = {}) {
  g.edges.push_back({name, name + "bar", from, to, group, std::move(psi)});
  g.edges.push_back({name + "bar", name, to, from, group, std::move(psi_reverse)});
}

inline GraphOfGroups free_product(const Presentation& a, const Presentation& b) {
  GraphOfGroups g;
  g.vertices.push_back({"u", a});
  g.vertices.push_back({"v", b});
  add_edge(g, "e", "u", "v");
  return g;
}

struct TrivialGraph {
  GraphOfGroups graph;
  std::vector<std::string> tree;  // one orientation of each tree edge
  int vertices = 0;
  int edges = 0;      // unoriented
  int free_gens = 0;  // relator-free generators spread over the vertex groups
};

inline TrivialGraph random_trivial_graph(std::mt19937_64& rng, int max_free_gens) {
  TrivialGraph t;
  t.vertices = 1 + static_cast<int>(rng() % 6);
  const int extra = static_cast<int>(rng() % 5);
  t.free_gens = max_free_gens > 0 ? static_cast<int>(rng() % static_cast<unsigned>(max_free_gens + 1)) : 0;
  GraphOfGroups& g = t.graph;
  for (int i = 0; i < t.vertices; ++i) g.vertices.push_back({"v" + std::to_string(i), {}});
  for (int k = 0; k < t.free_gens; ++k)
    g.vertices[rng() % g.vertices.size()].group.generators.push_back("g" + std::to_string(k));
  for (int i = 1; i < t.vertices; ++i) {
    const std::string name = "t" + std::to_string(i);
    add_edge(g, name, "v" + std::to_string(rng() % static_cast<unsigned>(i)), "v" + std::to_string(i));
    t.tree.push_back(rng() % 2 ? name : name + "bar");
    ++t.edges;
  }
  for (int k = 0; k < extra; ++k) {
    add_edge(g, "c" + std::to_string(k), "v" + std::to_string(rng() % static_cast<unsigned>(t.vertices)),
             "v" + std::to_string(rng() % static_cast<unsigned>(t.vertices)));
    ++t.edges;
  }
  return t;
}

// Balanced in the size form: portal sizes divide a per-class constant, and
// filler portals of size 1 owned by the weight-1 triplet "F" even out each
// class. Triplet indices are multiples of their stabilizer indices.
inline HierarchyLedger random_balanced_ledger(std::mt19937_64& rng) {
  HierarchyLedger l;
  const int nt = 1 + static_cast<int>(rng() % 3), nc = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < nt; ++t) l.triplets.push_back({"Z" + std::to_string(t), 1 + static_cast<std::int64_t>(rng() % 3), 1});
  l.triplets.push_back({"F", 1, 1});
  std::map<std::string, std::int64_t> lcm_index;
  std::int64_t filler_index = 1;
  int serial = 0;
  for (int c = 0; c < nc; ++c) {
    const std::string klass = "c" + std::to_string(c);
    l.classes.push_back(klass);
    const std::int64_t s = std::vector<std::int64_t>{1, 2, 3, 4}[rng() % 4];
    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d <= s; ++d)
      if (s % d == 0) divisors.push_back(d);
    std::int64_t sum[2] = {0, 0};
    const int np = static_cast<int>(rng() % 5);
    for (int k = 0; k < np; ++k) {
      const auto& owner = l.triplets[rng() % static_cast<std::size_t>(nt)];
      const std::int64_t idx = divisors[rng() % divisors.size()];
      const int side = rng() % 2 ? 1 : -1;
      l.portals.push_back({"p" + std::to_string(serial++), owner.id, klass, side, s / idx, idx});
      lcm_index[owner.id] = std::lcm(lcm_index.count(owner.id) ? lcm_index[owner.id] : 1, idx);
      sum[side > 0 ? 0 : 1] += owner.weight * (s / idx);
    }
    const std::int64_t deficit = sum[0] - sum[1];
    for (std::int64_t k = 0; k < std::abs(deficit); ++k)
      l.portals.push_back({"p" + std::to_string(serial++), "F", klass, deficit > 0 ? -1 : 1, 1, s});
    if (deficit != 0) filler_index = std::lcm(filler_index, s);
  }
  for (LedgerTriplet& t : l.triplets)
    t.index = t.id == "F" ? filler_index
                          : (lcm_index.count(t.id) ? lcm_index[t.id] : 1) * (1 + static_cast<std::int64_t>(rng() % 2));
  l.edge_classes = {"e"};
  for (const LedgerTriplet& t : l.triplets) {
    l.edge_records.push_back({"e", 1, t.id, "x" + t.id});
    l.edge_records.push_back({"e", -1, t.id, "y" + t.id});
  }
  return l;
}

}  // namespace proptest
