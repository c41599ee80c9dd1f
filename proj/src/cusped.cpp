#include "cubetool/cusped.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "cubetool/error.hpp"

namespace cubetool {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

Error malformed(const std::string& msg) { return Error(ErrorCode::kMalformedInput, msg); }

}  // namespace

GroupOracle GroupOracle::cyclic(int order, const std::vector<Generator>& generators) {
  if (order < 0) throw malformed("negative cyclic order");
  GroupOracle g;
  g.kind_ = GroupKind::kCyclic;
  g.size_ = order;
  for (Generator s : generators) {
    if (s.element.size() != 1) throw malformed("cyclic generator " + s.name + " is not a single integer");
    if (order > 0) s.element[0] = mod(s.element[0], order);
    g.generators_.push_back(std::move(s));
  }
  g.close_generators();
  return g;
}

GroupOracle GroupOracle::free(int rank) {
  if (rank < 1 || rank > 26) throw malformed("free rank must be between 1 and 26");
  GroupOracle g;
  g.kind_ = GroupKind::kFree;
  g.size_ = rank;
  for (int i = 0; i < rank; ++i) {
    g.generators_.push_back({std::string(1, static_cast<char>('a' + i)), {i + 1}});
    g.generators_.push_back({std::string(1, static_cast<char>('A' + i)), {-(i + 1)}});
  }
  g.close_generators();
  return g;
}

GroupOracle GroupOracle::free_abelian(int rank) {
  if (rank < 1 || rank > 26) throw malformed("free abelian rank must be between 1 and 26");
  GroupOracle g;
  g.kind_ = GroupKind::kFreeAbelian;
  g.size_ = rank;
  for (int i = 0; i < rank; ++i) {
    Element e(static_cast<std::size_t>(rank), 0);
    e[static_cast<std::size_t>(i)] = 1;
    g.generators_.push_back({std::string(1, static_cast<char>('a' + i)), e});
    e[static_cast<std::size_t>(i)] = -1;
    g.generators_.push_back({std::string(1, static_cast<char>('A' + i)), e});
  }
  g.close_generators();
  return g;
}

GroupOracle GroupOracle::permutation(int degree, const std::vector<Generator>& generators) {
  if (degree < 1) throw malformed("permutation degree must be positive");
  GroupOracle g;
  g.kind_ = GroupKind::kPermutation;
  g.size_ = degree;
  for (const Generator& s : generators) {
    Element sorted = s.element;
    std::sort(sorted.begin(), sorted.end());
    Element want(static_cast<std::size_t>(degree));
    std::iota(want.begin(), want.end(), 0);
    if (sorted != want) throw malformed("generator " + s.name + " is not a permutation of the right degree");
    g.generators_.push_back(s);
  }
  g.close_generators();
  return g;
}

void GroupOracle::close_generators() {
  std::vector<Generator> all = generators_;
  for (const Generator& s : generators_) {
    if (is_identity(s.element)) throw malformed("generator " + s.name + " is the identity");
    const Element inv = invert(s.element);
    if (std::none_of(all.begin(), all.end(), [&](const Generator& t) { return t.element == inv; }))
      all.push_back({s.name + "^-1", inv});
  }
  std::sort(all.begin(), all.end(), [](const Generator& a, const Generator& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t k = i + 1; k < all.size(); ++k) {
      if (all[i].name == all[k].name) throw malformed("duplicate generator name " + all[i].name);
      if (all[i].element == all[k].element) throw malformed("generators " + all[i].name + " and " + all[k].name + " are equal");
    }
  generators_ = std::move(all);
}

Element GroupOracle::identity() const {
  switch (kind_) {
    case GroupKind::kCyclic: return {0};
    case GroupKind::kFree: return {};
    case GroupKind::kFreeAbelian: return Element(static_cast<std::size_t>(size_), 0);
    case GroupKind::kPermutation: {
      Element e(static_cast<std::size_t>(size_));
      std::iota(e.begin(), e.end(), 0);
      return e;
    }
  }
  return {};
}

Element GroupOracle::multiply(const Element& a, const Element& b) const {
  switch (kind_) {
    case GroupKind::kCyclic: return {size_ > 0 ? mod(a[0] + b[0], size_) : a[0] + b[0]};
    case GroupKind::kFree: {
      Element out = a;
      for (int x : b) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
      }
      return out;
    }
    case GroupKind::kFreeAbelian: {
      Element out = a;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
      return out;
    }
    case GroupKind::kPermutation: {
      Element out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
      return out;
    }
  }
  return {};
}

Element GroupOracle::invert(const Element& a) const {
  switch (kind_) {
    case GroupKind::kCyclic: return {size_ > 0 ? mod(-a[0], size_) : -a[0]};
    case GroupKind::kFree: {
      Element out;
      for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
      return out;
    }
    case GroupKind::kFreeAbelian: {
      Element out = a;
      for (int& x : out) x = -x;
      return out;
    }
    case GroupKind::kPermutation: {
      Element out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
      return out;
    }
  }
  return {};
}

std::string GroupOracle::format(const Element& a) const {
  std::string out;
  switch (kind_) {
    case GroupKind::kCyclic: return std::to_string(a[0]);
    case GroupKind::kFree:
      if (a.empty()) return "1";
      for (int x : a) out += static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1);
      return out;
    case GroupKind::kFreeAbelian:
    case GroupKind::kPermutation:
      out = kind_ == GroupKind::kFreeAbelian ? "(" : "p(";
      for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
      return out + ")";
  }
  return out;
}

const Generator& GroupOracle::generator(const std::string& name) const {
  for (const Generator& s : generators_)
    if (s.name == name) return s;
  throw malformed("unknown generator " + name);
}

std::string GroupOracle::coset_key(const Element& g, const std::vector<std::string>& subgroup_generators) const {
  std::vector<Element> gens;
  for (const std::string& n : subgroup_generators) gens.push_back(generator(n).element);
  switch (kind_) {
    case GroupKind::kCyclic: {
      int d = size_;
      for (const Element& s : gens) d = std::gcd(d, s[0]);
      if (d == 0) return format(g);
      return std::to_string(mod(g[0], d));
    }
    case GroupKind::kFree: {
      std::set<int> letters;
      for (const Element& s : gens) {
        if (s.size() != 1) throw malformed("free subgroups must be spanned by basis letters");
        letters.insert(std::abs(s[0]));
      }
      Element out = g;
      while (!out.empty() && letters.count(std::abs(out.back()))) out.pop_back();
      return format(out);
    }
    case GroupKind::kFreeAbelian: {
      Element out = g;
      for (const Element& s : gens) {
        int nonzero = 0;
        std::size_t at = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (s[i] != 0) ++nonzero, at = i;
        if (nonzero != 1 || std::abs(s[at]) != 1) throw malformed("free abelian subgroups must be spanned by basis vectors");
        out[at] = 0;
      }
      return format(out);
    }
    case GroupKind::kPermutation: {
      std::set<Element> seen{identity()};
      std::deque<Element> queue{identity()};
      while (!queue.empty()) {
        Element p = queue.front();
        queue.pop_front();
        for (const Element& s : gens) {
          Element q = multiply(p, s);
          if (seen.insert(q).second) queue.push_back(q);
        }
      }
      Element best;
      for (const Element& p : seen) {
        Element q = multiply(g, p);
        if (best.empty() || q < best) best = q;
      }
      return format(best);
    }
  }
  return {};
}

void check_group_laws(const GroupOracle& g, const std::vector<Element>& sample) {
  const Element e = g.identity();
  std::vector<Element> s(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(sample.size(), 12)));
  for (const Element& a : s) {
    if (g.multiply(a, e) != a || g.multiply(e, a) != a)
      throw Error(ErrorCode::kOracleInconsistent, "identity law fails at " + g.format(a));
    if (!g.is_identity(g.multiply(a, g.invert(a))) || !g.is_identity(g.multiply(g.invert(a), a)))
      throw Error(ErrorCode::kOracleInconsistent, "inverse law fails at " + g.format(a));
  }
  for (const Element& a : s)
    for (const Element& b : s)
      for (const Element& c : s)
        if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c)))
          throw Error(ErrorCode::kOracleInconsistent,
                      "associativity fails at " + g.format(a) + ", " + g.format(b) + ", " + g.format(c));
}

std::vector<std::vector<Element>> doubling_sets(const GroupOracle& g, const std::vector<Element>& seed, int n) {
  check_group_laws(g, seed);
  std::set<Element> cur;
  for (const Element& s : seed)
    if (!g.is_identity(s)) cur.insert(s);
  std::vector<std::vector<Element>> out{{cur.begin(), cur.end()}};
  for (int k = 1; k <= n; ++k) {
    std::set<Element> next = cur;
    for (const Element& a : cur)
      for (const Element& b : cur) {
        Element p = g.multiply(a, b);
        if (!g.is_identity(p)) next.insert(std::move(p));
      }
    cur = std::move(next);
    out.emplace_back(cur.begin(), cur.end());
  }
  return out;
}

GroupSpec group_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<Generator> gens;
    if (j.contains("generators"))
      for (const auto& [name, value] : j.at("generators").items()) gens.push_back({name, value.get<Element>()});
    std::optional<GroupOracle> g;
    if (kind == "cyclic") g = GroupOracle::cyclic(j.at("order").get<int>(), gens);
    else if (kind == "free") g = GroupOracle::free(j.at("rank").get<int>());
    else if (kind == "free_abelian") g = GroupOracle::free_abelian(j.at("rank").get<int>());
    else if (kind == "permutation") g = GroupOracle::permutation(j.at("degree").get<int>(), gens);
    else throw malformed("unknown group kind " + kind);
    GroupSpec spec{*g, {}};
    if (j.contains("peripherals"))
      for (const auto& p : j.at("peripherals")) {
        Peripheral per{p.at("name").get<std::string>(), p.at("generators").get<std::vector<std::string>>()};
        for (const std::string& n : per.generators) spec.group.generator(n);
        spec.peripherals.push_back(std::move(per));
      }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw malformed(std::string("group description: ") + e.what());
  }
}

const char* cusped_edge_kind_name(CuspedEdgeKind k) {
  switch (k) {
    case CuspedEdgeKind::kCayley: return "cayley";
    case CuspedEdgeKind::kVertical: return "vertical";
    case CuspedEdgeKind::kHorizontal: return "horizontal";
  }
  return "";
}

Graph CuspedBall::graph() const {
  Graph g;
  for (const CuspedVertex& v : vertices) g.names.push_back(v.name);
  g.adjacency.resize(vertices.size());
  for (const CuspedEdge& e : edges) {
    g.adjacency[static_cast<std::size_t>(e.u)].push_back(e.v);
    g.adjacency[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  return g;
}

std::size_t CuspedBall::count(CuspedEdgeKind k) const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](const CuspedEdge& e) { return e.kind == k; }));
}

CuspedBall build_cusped_ball(const GroupSpec& spec, int rho, int depth, std::size_t max_vertices) {
  if (rho < 0 || depth < 0) throw malformed("radius and depth must be non-negative");
  const GroupOracle& g = spec.group;
  std::vector<Element> gens;
  for (const Generator& s : g.generators()) gens.push_back(s.element);
  check_group_laws(g, gens);

  CuspedBall ball;
  ball.rho = rho;
  ball.depth = depth;
  std::map<Element, int> index;
  auto add_vertex = [&](CuspedVertex v) {
    if (ball.vertices.size() >= max_vertices)
      throw Error(ErrorCode::kBallBudgetExceeded, "cusped ball exceeds " + std::to_string(max_vertices) + " vertices");
    ball.vertices.push_back(std::move(v));
    return static_cast<int>(ball.vertices.size() - 1);
  };
  std::vector<int> dist;
  index[g.identity()] = add_vertex({g.format(g.identity()), g.identity(), 0, -1});
  dist.push_back(0);
  for (std::size_t head = 0; head < ball.vertices.size(); ++head) {
    if (dist[head] == rho) continue;
    const Element v = ball.vertices[head].element;
    for (const Element& s : gens) {
      Element w = g.multiply(v, s);
      if (index.count(w)) continue;
      const std::string name = g.format(w);
      index[w] = add_vertex({name, w, 0, -1});
      dist.push_back(dist[head] + 1);
    }
  }
  const std::size_t cayley_size = ball.vertices.size();

  // (v, s) and (vs, s^-1) name one edge unless s = s^-1.
  auto add_steps = [&](const std::vector<int>& layer, const std::map<Element, int>& where,
                       const std::vector<std::pair<std::string, Element>>& steps, CuspedEdgeKind kind, int level) {
    for (int vi : layer) {
      const Element& v = ball.vertices[static_cast<std::size_t>(vi)].element;
      for (const auto& [label, s] : steps) {
        auto it = where.find(g.multiply(v, s));
        if (it == where.end()) {
          ++ball.uncertified_edges;
          continue;
        }
        const bool involution = g.invert(s) == s;
        if (involution || vi < it->second) ball.edges.push_back({vi, it->second, kind, level, label});
      }
    }
  };
  std::vector<int> all_cayley(cayley_size);
  std::iota(all_cayley.begin(), all_cayley.end(), 0);
  std::vector<std::pair<std::string, Element>> cayley_steps;
  for (const Generator& s : g.generators()) cayley_steps.push_back({s.name, s.element});
  add_steps(all_cayley, index, cayley_steps, CuspedEdgeKind::kCayley, 0);

  for (std::size_t pi = 0; pi < spec.peripherals.size(); ++pi) {
    const Peripheral& p = spec.peripherals[pi];
    std::vector<Element> seed;
    for (const std::string& n : p.generators) seed.push_back(g.generator(n).element);
    for (const std::string& n : p.generators) seed.push_back(g.invert(g.generator(n).element));
    ball.doubling.push_back(doubling_sets(g, seed, depth));
    std::map<std::string, int> coset_of;
    const std::size_t first = ball.cosets.size();
    for (std::size_t vi = 0; vi < cayley_size; ++vi) {
      const std::string key = p.name + ":" + g.coset_key(ball.vertices[vi].element, p.generators);
      auto [it, fresh] = coset_of.emplace(key, static_cast<int>(ball.cosets.size()));
      if (fresh) ball.cosets.push_back({key, static_cast<int>(pi), {}});
      ball.cosets[static_cast<std::size_t>(it->second)].base.push_back(static_cast<int>(vi));
    }
    for (std::size_t ci = first; ci < ball.cosets.size(); ++ci) {
      std::vector<int> below = ball.cosets[ci].base;
      for (int n = 1; n <= depth; ++n) {
        std::vector<int> layer;
        std::map<Element, int> where;
        for (int b : below) {
          const CuspedVertex& under = ball.vertices[static_cast<std::size_t>(b)];
          const int vi = add_vertex({g.format(under.element) + "/" + p.name + "@" + std::to_string(n), under.element, n,
                                     static_cast<int>(ci)});
          ball.edges.push_back({b, vi, CuspedEdgeKind::kVertical, n, ""});
          layer.push_back(vi);
          where[under.element] = vi;
        }
        std::vector<std::pair<std::string, Element>> steps;
        for (const Element& s : ball.doubling.back()[static_cast<std::size_t>(n)]) steps.push_back({g.format(s), s});
        add_steps(layer, where, steps, CuspedEdgeKind::kHorizontal, n);
        below = std::move(layer);
      }
    }
  }
  return ball;
}

Horoball horoball(const CuspedBall& ball, const std::string& coset, int r) {
  auto it = std::find_if(ball.cosets.begin(), ball.cosets.end(), [&](const Coset& c) { return c.name == coset; });
  if (it == ball.cosets.end()) throw Error(ErrorCode::kUnknownCoset, "no coset " + coset);
  if (r < 0 || r > ball.depth) throw malformed("horoball depth outside the ball");
  const int ci = static_cast<int>(it - ball.cosets.begin());
  Horoball h{coset, r, {}, {}};
  if (r == 0) h.vertices = it->base;
  for (std::size_t vi = 0; vi < ball.vertices.size(); ++vi)
    if (ball.vertices[vi].coset == ci && ball.vertices[vi].depth >= r) h.vertices.push_back(static_cast<int>(vi));
  std::sort(h.vertices.begin(), h.vertices.end());
  for (std::size_t ei = 0; ei < ball.edges.size(); ++ei) {
    const CuspedEdge& e = ball.edges[ei];
    if (std::binary_search(h.vertices.begin(), h.vertices.end(), e.u) &&
        std::binary_search(h.vertices.begin(), h.vertices.end(), e.v))
      h.edges.push_back(static_cast<int>(ei));
  }
  return h;
}

SlimReport slim_probe(const Graph& g, const SlimOptions& options) {
  const std::size_t n = g.names.size();
  if (n > 4000) throw Error(ErrorCode::kBudgetExceeded, "slim probe is limited to 4000 vertices");
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<int> queue{static_cast<int>(s)};
    d[s][s] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : g.adjacency[static_cast<std::size_t>(v)])
        if (d[s][static_cast<std::size_t>(w)] < 0) {
          d[s][static_cast<std::size_t>(w)] = d[s][static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
    }
  }
  auto interval = [&](std::size_t x, std::size_t y) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < n; ++p)
      if (d[x][p] >= 0 && d[x][p] + d[p][y] == d[x][y]) out.push_back(p);
    return out;
  };
  SlimReport rep;
  auto triangle = [&](std::size_t x, std::size_t y, std::size_t z) {
    if (d[x][y] < 0 || d[y][z] < 0) return;
    ++rep.triples;
    const std::size_t corners[3] = {x, y, z};
    std::vector<std::size_t> sides[3];
    for (int i = 0; i < 3; ++i) sides[i] = interval(corners[i], corners[(i + 1) % 3]);
    for (int i = 0; i < 3; ++i) {
      std::vector<bool> other(n, false);
      for (int k = 1; k < 3; ++k)
        for (std::size_t q : sides[(i + k) % 3]) other[q] = true;
      for (std::size_t p : sides[i]) {
        int best = -1;
        for (std::size_t q = 0; q < n; ++q)
          if (other[q] && (best < 0 || d[p][q] < best)) best = d[p][q];
        if (best > rep.delta) {
          rep.delta = best;
          rep.worst = {g.names[x], g.names[y], g.names[z]};
        }
      }
    }
  };
  auto quad = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
    if (d[a][b] < 0 || d[a][c] < 0 || d[a][e] < 0) return;
    ++rep.quadruples;
    int s[3] = {d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]};
    std::sort(s, s + 3);
    rep.four_point = std::max(rep.four_point, (s[2] - s[1]) / 2.0);
  };
  std::mt19937_64 rng(options.seed);
  auto pick = [&] { return static_cast<std::size_t>(rng() % n); };
  if (n == 0) return rep;
  if (options.exhaustive) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        for (std::size_t z = y + 1; z < n; ++z) triangle(x, y, z);
  } else {
    for (std::size_t i = 0; i < options.samples; ++i) triangle(pick(), pick(), pick());
  }
  if (options.exhaustive && n <= 60) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t e = c + 1; e < n; ++e) quad(a, b, c, e);
  } else {
    for (std::size_t i = 0; i < options.samples; ++i) quad(pick(), pick(), pick(), pick());
  }
  return rep;
}

}  // namespace cubetool
