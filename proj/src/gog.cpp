#include "cubetool/gog.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

#include "cubetool/error.hpp"

namespace cubetool {

namespace {

Error malformed(const std::string& m) { return Error(ErrorCode::kMalformedInput, m); }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw malformed("ledger arithmetic overflows 64 bits");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw malformed("ledger arithmetic overflows 64 bits");
  return out;
}

void check_word(const Word& w, const std::set<std::string>& gens, const std::string& where) {
  for (const Letter& l : w)
    if (!gens.count(l.generator)) throw malformed(where + " uses unknown generator " + l.generator);
}

std::set<std::string> generator_set(const Presentation& p) { return {p.generators.begin(), p.generators.end()}; }

Word substitute(const Word& w, const std::map<std::string, Word>& images) {
  Word out;
  for (const Letter& l : w) {
    const Word& img = images.at(l.generator);
    const Word piece = l.inverse ? invert_word(img) : img;
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(out);
}

std::string side_name(int side) { return side > 0 ? "+" : "-"; }

int side_from(const nlohmann::json& j) {
  const std::string s = j.get<std::string>();
  if (s == "+") return 1;
  if (s == "-") return -1;
  throw malformed("side must be + or -, got " + s);
}

}  // namespace

Word parse_word(const std::vector<std::string>& tokens) {
  Word w;
  for (const std::string& t : tokens) {
    const bool inv = t.size() > 3 && t.compare(t.size() - 3, 3, "^-1") == 0;
    Letter l{inv ? t.substr(0, t.size() - 3) : t, inv};
    if (l.generator.empty()) throw malformed("empty letter in word");
    w.push_back(std::move(l));
  }
  return w;
}

std::vector<std::string> word_tokens(const Word& w) {
  std::vector<std::string> out;
  for (const Letter& l : w) out.push_back(l.inverse ? l.generator + "^-1" : l.generator);
  return out;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const std::string& t : word_tokens(w)) out += (out.empty() ? "" : " ") + t;
  return out;
}

Word invert_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, !it->inverse});
  return out;
}

Word free_reduce(Word w) {
  Word out;
  for (Letter& l : w) {
    if (!out.empty() && out.back().generator == l.generator && out.back().inverse != l.inverse)
      out.pop_back();
    else
      out.push_back(std::move(l));
  }
  return out;
}

std::string format_presentation(const Presentation& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.generators.size(); ++i) out += (i ? ", " : "") + p.generators[i];
  out += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) out += (i ? ", " : " ") + format_word(p.relators[i]);
  return out + ">";
}

nlohmann::json presentation_to_json(const Presentation& p) {
  nlohmann::json rel = nlohmann::json::array();
  for (const Word& w : p.relators) rel.push_back(word_tokens(w));
  return {{"generators", p.generators}, {"relators", rel}};
}

Presentation presentation_from_json(const nlohmann::json& j) {
  try {
    Presentation p;
    if (j.contains("generators")) p.generators = j.at("generators").get<std::vector<std::string>>();
    if (generator_set(p).size() != p.generators.size()) throw malformed("repeated generator");
    if (j.contains("relators"))
      for (const auto& r : j.at("relators")) p.relators.push_back(parse_word(r.get<std::vector<std::string>>()));
    for (const Word& r : p.relators) check_word(r, generator_set(p), "relator");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw malformed(std::string("presentation: ") + e.what());
  }
}

const GogVertex& GraphOfGroups::vertex(const std::string& name) const {
  for (const GogVertex& v : vertices)
    if (v.name == name) return v;
  throw Error(ErrorCode::kUnknownVertex, "no vertex " + name);
}

const GogEdge& GraphOfGroups::edge(const std::string& name) const {
  for (const GogEdge& e : edges)
    if (e.name == name) return e;
  throw malformed("no edge " + name);
}

std::vector<std::string> validate_gog(const GraphOfGroups& g) {
  if (g.vertices.empty()) throw malformed("graph of groups has no vertices");
  std::set<std::string> names;
  for (const GogVertex& v : g.vertices)
    if (!names.insert(v.name).second) throw malformed("repeated vertex " + v.name);
  std::set<std::string> symbols;
  for (const GogVertex& v : g.vertices)
    for (const std::string& s : v.group.generators)
      if (!symbols.insert(s).second) throw malformed("generator " + s + " appears in two vertex groups");
  std::set<std::string> edge_names;
  for (const GogEdge& e : g.edges) {
    if (!edge_names.insert(e.name).second) throw malformed("repeated edge " + e.name);
    if (symbols.count(e.name)) throw malformed("edge " + e.name + " shares a name with a vertex generator");
  }
  std::vector<std::string> warnings;
  for (const GogEdge& e : g.edges) {
    if (e.reverse == e.name) throw malformed("edge " + e.name + " is its own reverse");
    if (!edge_names.count(e.reverse)) throw malformed("edge " + e.name + " has unknown reverse " + e.reverse);
    const GogEdge& r = g.edge(e.reverse);
    if (r.reverse != e.name) throw malformed("edge " + e.name + " and its reverse are not paired");
    if (r.from != e.to || r.to != e.from) throw malformed("edge " + e.name + " and its reverse have mismatched ends");
    if (r.group.generators != e.group.generators || r.group.relators != e.group.relators)
      throw malformed("edge " + e.name + " and its reverse carry different groups");
    g.vertex(e.from);
    const Presentation& target = g.vertex(e.to).group;
    for (const Word& w : e.group.relators) check_word(w, generator_set(e.group), "edge " + e.name + " relator");
    for (const std::string& z : e.group.generators) {
      auto it = e.psi.find(z);
      if (it == e.psi.end()) throw malformed("attachment map of " + e.name + " misses generator " + z);
      check_word(it->second, generator_set(target), "attachment map of " + e.name);
    }
    if (e.psi.size() != e.group.generators.size()) throw malformed("attachment map of " + e.name + " has extra entries");
    if (e.group.relators.empty()) continue;
    if (target.relators.empty()) {
      for (const Word& w : e.group.relators)
        if (!substitute(w, e.psi).empty())
          throw malformed("attachment map of " + e.name + " sends relator " + format_word(w) + " to a non-identity");
    } else {
      warnings.push_back("attachment map of " + e.name + " not checked");
    }
  }
  std::map<std::string, std::vector<std::string>> adj;
  for (const GogEdge& e : g.edges) adj[e.from].push_back(e.to);
  std::set<std::string> seen{g.vertices.front().name};
  std::deque<std::string> queue{g.vertices.front().name};
  while (!queue.empty()) {
    const std::string v = queue.front();
    queue.pop_front();
    for (const std::string& u : adj[v])
      if (seen.insert(u).second) queue.push_back(u);
  }
  if (seen.size() != g.vertices.size()) throw malformed("graph of groups is not connected");
  return warnings;
}

GraphOfGroups gog_from_json(const nlohmann::json& j) {
  try {
    GraphOfGroups g;
    for (const auto& v : j.at("vertices")) g.vertices.push_back({v.at("name").get<std::string>(), presentation_from_json(v)});
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        GogEdge edge{e.at("name").get<std::string>(), e.at("reverse").get<std::string>(),
                     e.at("from").get<std::string>(), e.at("to").get<std::string>(), presentation_from_json(e), {}};
        if (e.contains("psi"))
          for (const auto& [z, w] : e.at("psi").items()) edge.psi[z] = parse_word(w.get<std::vector<std::string>>());
        g.edges.push_back(std::move(edge));
      }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw malformed(std::string("graph of groups: ") + e.what());
  }
}

Pi1Presentation pi1_presentation(const GraphOfGroups& g, const std::string& base, const std::vector<std::string>& tree) {
  Pi1Presentation out;
  out.warnings = validate_gog(g);
  g.vertex(base);

  auto symbol_of = [&](const GogEdge& e) { return std::min(e.name, e.reverse); };
  std::set<std::string> tree_symbols;
  for (const std::string& t : tree) {
    const GogEdge* e = nullptr;
    for (const GogEdge& c : g.edges)
      if (c.name == t) e = &c;
    if (!e) throw Error(ErrorCode::kNotSpanningTree, "tree edge " + t + " is not an edge", {t});
    if (e->from == e->to) throw Error(ErrorCode::kNotSpanningTree, "tree edge " + t + " is a loop", {t});
    if (!tree_symbols.insert(symbol_of(*e)).second)
      throw Error(ErrorCode::kNotSpanningTree, "tree edge " + t + " listed twice", {t});
  }
  if (tree_symbols.size() + 1 != g.vertices.size())
    throw Error(ErrorCode::kNotSpanningTree, "a spanning tree needs " + std::to_string(g.vertices.size() - 1) + " edges");
  std::map<std::string, std::string> parent;
  for (const GogVertex& v : g.vertices) parent[v.name] = v.name;
  std::function<std::string(const std::string&)> find = [&](const std::string& v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const GogEdge& e : g.edges) {
    if (!tree_symbols.count(symbol_of(e)) || e.name != symbol_of(e)) continue;
    const std::string a = find(e.from), b = find(e.to);
    if (a == b) throw Error(ErrorCode::kNotSpanningTree, "tree edges close a cycle at " + e.name, {e.name});
    parent[a] = b;
  }

  Presentation& p = out.presentation;
  for (const GogVertex& v : g.vertices) {
    p.generators.insert(p.generators.end(), v.group.generators.begin(), v.group.generators.end());
    for (const Word& r : v.group.relators)
      if (!free_reduce(r).empty()) p.relators.push_back(free_reduce(r));
  }
  std::map<std::string, Word> images;
  for (const std::string& s : p.generators) images[s] = {{s, false}};
  for (const GogEdge& e : g.edges) {
    const std::string s = symbol_of(e);
    if (tree_symbols.count(s)) {
      out.edge_words[e.name] = {};
    } else {
      out.edge_words[e.name] = {{s, e.name != s}};
      if (e.name == s) p.generators.push_back(s);
    }
    images[e.name] = out.edge_words[e.name];
  }
  for (const GogEdge& e : g.edges) {
    if (e.name != symbol_of(e)) continue;
    const GogEdge& r = g.edge(e.reverse);
    for (const std::string& z : e.group.generators) {
      Word rel = out.edge_words[e.name];
      const Word forward = substitute(e.psi.at(z), images);
      rel.insert(rel.end(), forward.begin(), forward.end());
      const Word back = invert_word(out.edge_words[e.name]);
      rel.insert(rel.end(), back.begin(), back.end());
      const Word other = invert_word(substitute(r.psi.at(z), images));
      rel.insert(rel.end(), other.begin(), other.end());
      rel = free_reduce(rel);
      if (!rel.empty()) p.relators.push_back(std::move(rel));
    }
  }
  return out;
}

Word circuit_element(const GraphOfGroups& g, const std::string& base, const std::vector<std::string>& tree,
                     const std::vector<std::string>& edges, const std::vector<Word>& elements) {
  const Pi1Presentation pres = pi1_presentation(g, base, tree);
  auto fail = [](std::size_t i, const std::string& why) {
    return Error(ErrorCode::kNotACircuit, why + " at index " + std::to_string(i), {std::to_string(i)});
  };
  if (elements.size() != edges.size() + 1) throw fail(elements.size(), "a circuit needs one more element than edges");
  Word out;
  std::string at = base;
  for (std::size_t i = 0; i <= edges.size(); ++i) {
    if (i > 0) {
      const GogEdge* e = nullptr;
      for (const GogEdge& c : g.edges)
        if (c.name == edges[i - 1]) e = &c;
      if (!e) throw fail(i, "unknown edge " + edges[i - 1]);
      if (e->from != at) throw fail(i, "edge " + e->name + " does not start at " + at);
      const Word& w = pres.edge_words.at(e->name);
      out.insert(out.end(), w.begin(), w.end());
      at = e->to;
    }
    const std::set<std::string> gens = generator_set(g.vertex(at).group);
    for (const Letter& l : elements[i])
      if (!gens.count(l.generator)) throw fail(i, "element uses " + l.generator + " outside the group at " + at);
    out.insert(out.end(), elements[i].begin(), elements[i].end());
  }
  if (at != base) throw fail(edges.size(), "circuit ends at " + at + " instead of " + base);
  return free_reduce(out);
}

std::uint64_t hom_count(const Presentation& p, const GroupOracle& target, std::uint64_t budget) {
  if (target.kind() == GroupKind::kFree || target.kind() == GroupKind::kFreeAbelian)
    throw malformed("hom_count needs a finite target");
  std::vector<Element> elems;
  std::map<Element, int> index;
  elems.push_back(target.identity());
  index[elems.front()] = 0;
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const Generator& s : target.generators()) {
      Element x = target.multiply(elems[head], s.element);
      if (index.count(x)) continue;
      if (elems.size() >= 5000) throw malformed("hom_count needs a finite target");
      index[x] = static_cast<int>(elems.size());
      elems.push_back(std::move(x));
    }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<int> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    inv[a] = index.at(target.invert(elems[a]));
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = index.at(target.multiply(elems[a], elems[b]));
  }
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < p.generators.size(); ++i) slot[p.generators[i]] = i;
  std::vector<std::vector<std::pair<std::size_t, bool>>> rels;
  for (const Word& r : p.relators) {
    std::vector<std::pair<std::size_t, bool>> coded;
    for (const Letter& l : r) {
      auto it = slot.find(l.generator);
      if (it == slot.end()) throw malformed("relator uses unknown generator " + l.generator);
      coded.emplace_back(it->second, l.inverse);
    }
    rels.push_back(std::move(coded));
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (total > budget / n) throw Error(ErrorCode::kBudgetExceeded, "hom_count exceeds its assignment budget");
    total *= n;
  }
  std::vector<int> assign(p.generators.size(), 0);
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k < total; ++k) {
    bool ok = true;
    for (const auto& r : rels) {
      int x = 0;
      for (const auto& [g, invert] : r) x = mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(invert ? inv[static_cast<std::size_t>(assign[g])] : assign[g])];
      if (x != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (++assign[i] < static_cast<int>(n)) break;
      assign[i] = 0;
    }
  }
  return count;
}

int abelian_rank(const Presentation& p) {
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < p.generators.size(); ++i) col[p.generators[i]] = i;
  std::vector<std::vector<std::int64_t>> rows;
  for (const Word& r : p.relators) {
    std::vector<std::int64_t> row(p.generators.size(), 0);
    for (const Letter& l : r) {
      auto it = col.find(l.generator);
      if (it == col.end()) throw malformed("relator uses unknown generator " + l.generator);
      row[it->second] += l.inverse ? -1 : 1;
    }
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < p.generators.size() && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::int64_t a = rows[rank][c], b = rows[r][c];
      for (std::size_t k = c; k < rows[r].size(); ++k) rows[r][k] = checked_add(checked_mul(a, rows[r][k]), -checked_mul(b, rows[rank][k]));
      std::int64_t d = 0;
      for (std::int64_t v : rows[r]) d = std::gcd(d, v);
      if (d > 1)
        for (std::int64_t& v : rows[r]) v /= d;
    }
    ++rank;
  }
  return static_cast<int>(p.generators.size() - rank);
}

const LedgerTriplet& HierarchyLedger::triplet(const std::string& id) const {
  for (const LedgerTriplet& t : triplets)
    if (t.id == id) return t;
  throw malformed("no triplet " + id);
}

void validate_ledger(const HierarchyLedger& l) {
  std::set<std::string> ids;
  for (const LedgerTriplet& t : l.triplets) {
    if (!ids.insert(t.id).second) throw malformed("repeated triplet " + t.id);
    if (t.weight < 1 || t.index < 1) throw malformed("triplet " + t.id + " needs a positive weight and index");
  }
  const std::set<std::string> classes(l.classes.begin(), l.classes.end());
  if (classes.size() != l.classes.size()) throw malformed("repeated portal class");
  std::set<std::string> portal_ids;
  for (const PortalRecord& p : l.portals) {
    if (!portal_ids.insert(p.id).second) throw malformed("repeated portal " + p.id);
    if (!ids.count(p.triplet)) throw malformed("portal " + p.id + " references unknown triplet " + p.triplet);
    if (!classes.count(p.klass)) throw malformed("portal " + p.id + " references unknown class " + p.klass);
    if (p.side != 1 && p.side != -1) throw malformed("portal " + p.id + " has no side");
    if (p.size < 1 || p.stabilizer_index < 1) throw malformed("portal " + p.id + " needs a positive size and index");
  }
  const std::set<std::string> edge_classes(l.edge_classes.begin(), l.edge_classes.end());
  if (edge_classes.size() != l.edge_classes.size()) throw malformed("repeated edge class");
  for (const EdgeRecord& e : l.edge_records) {
    if (!ids.count(e.triplet)) throw malformed("edge record " + e.orbit + " references unknown triplet " + e.triplet);
    if (!edge_classes.count(e.klass)) throw malformed("edge record " + e.orbit + " references unknown class " + e.klass);
    if (e.side != 1 && e.side != -1) throw malformed("edge record " + e.orbit + " has no side");
  }
}

HierarchyLedger ledger_from_json(const nlohmann::json& j) {
  try {
    HierarchyLedger l;
    for (const auto& t : j.at("triplets"))
      l.triplets.push_back({t.at("id").get<std::string>(), t.value("weight", std::int64_t{1}), t.value("index", std::int64_t{1})});
    if (j.contains("classes")) l.classes = j.at("classes").get<std::vector<std::string>>();
    if (j.contains("portals"))
      for (const auto& p : j.at("portals"))
        l.portals.push_back({p.at("id").get<std::string>(), p.at("triplet").get<std::string>(),
                             p.at("class").get<std::string>(), side_from(p.at("side")), p.at("size").get<std::int64_t>(),
                             p.value("stabilizer_index", std::int64_t{1})});
    if (j.contains("edge_classes")) l.edge_classes = j.at("edge_classes").get<std::vector<std::string>>();
    if (j.contains("edge_records"))
      for (const auto& e : j.at("edge_records"))
        l.edge_records.push_back({e.at("class").get<std::string>(), side_from(e.at("side")),
                                  e.at("triplet").get<std::string>(), e.at("orbit").get<std::string>()});
    validate_ledger(l);
    return l;
  } catch (const nlohmann::json::exception& e) {
    throw malformed(std::string("ledger: ") + e.what());
  }
}

nlohmann::json ledger_to_json(const HierarchyLedger& l) {
  nlohmann::json j;
  j["triplets"] = nlohmann::json::array();
  for (const LedgerTriplet& t : l.triplets) j["triplets"].push_back({{"id", t.id}, {"weight", t.weight}, {"index", t.index}});
  j["classes"] = l.classes;
  j["portals"] = nlohmann::json::array();
  for (const PortalRecord& p : l.portals)
    j["portals"].push_back({{"id", p.id}, {"triplet", p.triplet}, {"class", p.klass}, {"side", side_name(p.side)},
                            {"size", p.size}, {"stabilizer_index", p.stabilizer_index}});
  j["edge_classes"] = l.edge_classes;
  j["edge_records"] = nlohmann::json::array();
  for (const EdgeRecord& e : l.edge_records)
    j["edge_records"].push_back({{"class", e.klass}, {"side", side_name(e.side)}, {"triplet", e.triplet}, {"orbit", e.orbit}});
  return j;
}

SizeIdentityReport size_identities(const HierarchyLedger& l, const std::map<std::string, std::int64_t>& modified_sizes) {
  validate_ledger(l);
  SizeIdentityReport out;
  std::map<std::string, std::pair<std::string, std::int64_t>> class_value;
  for (const PortalRecord& p : l.portals) {
    auto it = modified_sizes.find(p.id);
    if (it == modified_sizes.end()) {
      out.violations.push_back("missing:" + p.id);
      continue;
    }
    const std::int64_t want = checked_mul(p.stabilizer_index, p.size);
    if (it->second != want)
      out.violations.push_back("index:" + p.id + ":" + std::to_string(it->second) + "!=" + std::to_string(want));
    auto [cv, fresh] = class_value.emplace(p.klass, std::make_pair(p.id, it->second));
    if (!fresh && cv->second.second != it->second)
      out.violations.push_back("compatible:" + cv->second.first + ":" + p.id + ":" + std::to_string(cv->second.second) +
                               "!=" + std::to_string(it->second));
  }
  out.ok = out.violations.empty();
  return out;
}

HierarchyLedger virtual_modify(const HierarchyLedger& l) {
  validate_ledger(l);
  HierarchyLedger out = l;
  std::map<std::string, std::int64_t> index;
  for (const LedgerTriplet& t : l.triplets) index[t.id] = t.index;
  for (LedgerTriplet& t : out.triplets) {
    std::int64_t factor = 1;
    for (const LedgerTriplet& o : l.triplets)
      if (o.id != t.id) factor = checked_mul(factor, o.index);
    t.weight = checked_mul(factor, t.weight);
    t.index = 1;
  }
  out.portals.clear();
  for (const PortalRecord& p : l.portals) {
    const std::int64_t i = index.at(p.triplet);
    if (i % p.stabilizer_index != 0)
      throw malformed("stabilizer index of portal " + p.id + " does not divide the index of " + p.triplet);
    const std::int64_t copies = i / p.stabilizer_index;
    for (std::int64_t k = 0; k < copies; ++k) {
      PortalRecord q = p;
      if (copies > 1) q.id += "/" + std::to_string(k);
      q.size = checked_mul(p.stabilizer_index, p.size);
      q.stabilizer_index = 1;
      out.portals.push_back(std::move(q));
    }
  }
  out.edge_records.clear();
  for (const EdgeRecord& e : l.edge_records) {
    const std::int64_t copies = index.at(e.triplet);
    for (std::int64_t k = 0; k < copies; ++k) {
      EdgeRecord q = e;
      if (copies > 1) q.orbit += "/" + std::to_string(k);
      out.edge_records.push_back(std::move(q));
    }
  }
  return out;
}

namespace {

std::vector<ClassBalance> balances(const std::vector<std::string>& classes,
                                   const std::vector<std::tuple<std::string, int, std::int64_t>>& items) {
  std::map<std::string, ClassBalance> m;
  for (const std::string& c : classes) m[c] = {c, 0, 0};
  for (const auto& [c, side, amount] : items) {
    ClassBalance& b = m.at(c);
    (side > 0 ? b.plus : b.minus) = checked_add(side > 0 ? b.plus : b.minus, amount);
  }
  std::vector<ClassBalance> out;
  for (auto& [c, b] : m) out.push_back(b);
  return out;
}

void require_balanced(const std::vector<ClassBalance>& bs, const std::string& form) {
  for (const ClassBalance& b : bs)
    if (b.plus != b.minus)
      throw Error(ErrorCode::kUnbalanced,
                  "class " + b.klass + " is unbalanced in " + form + " form: " + std::to_string(b.plus) + " vs " +
                      std::to_string(b.minus),
                  {form, b.klass, std::to_string(b.plus), std::to_string(b.minus)});
}

std::map<std::string, std::int64_t> weights(const HierarchyLedger& l) {
  std::map<std::string, std::int64_t> w;
  for (const LedgerTriplet& t : l.triplets) w[t.id] = t.weight;
  return w;
}

}  // namespace

GluingReport gluing_check(const HierarchyLedger& l, bool modify) {
  validate_ledger(l);
  GluingReport out;
  const auto w = weights(l);
  std::vector<std::tuple<std::string, int, std::int64_t>> sizes, edges;
  for (const PortalRecord& p : l.portals) sizes.emplace_back(p.klass, p.side, checked_mul(w.at(p.triplet), p.size));
  for (const EdgeRecord& e : l.edge_records) edges.emplace_back(e.klass, e.side, w.at(e.triplet));
  out.size_sums = balances(l.classes, sizes);
  out.edge_counts = balances(l.edge_classes, edges);
  require_balanced(out.size_sums, "size");
  require_balanced(out.edge_counts, "edge");
  if (!modify) return out;
  const HierarchyLedger m = virtual_modify(l);
  const auto mw = weights(m);
  std::vector<std::tuple<std::string, int, std::int64_t>> counts, medges;
  for (const PortalRecord& p : m.portals) counts.emplace_back(p.klass, p.side, mw.at(p.triplet));
  for (const EdgeRecord& e : m.edge_records) medges.emplace_back(e.klass, e.side, mw.at(e.triplet));
  out.modified = true;
  out.portal_counts = balances(m.classes, counts);
  require_balanced(out.portal_counts, "count");
  require_balanced(balances(m.edge_classes, medges), "edge");
  return out;
}

std::vector<PortalPair> portal_matching(const HierarchyLedger& l) {
  validate_ledger(l);
  const auto w = weights(l);
  std::vector<PortalRecord> sorted = l.portals;
  std::sort(sorted.begin(), sorted.end(), [](const PortalRecord& a, const PortalRecord& b) { return a.id < b.id; });
  std::vector<PortalPair> out;
  for (const std::string& c : l.classes) {
    std::vector<std::string> plus, minus;
    for (const PortalRecord& p : sorted) {
      if (p.klass != c) continue;
      if (plus.size() + minus.size() + static_cast<std::size_t>(w.at(p.triplet)) > 1000000)
        throw Error(ErrorCode::kBudgetExceeded, "portal matching exceeds a million portals");
      for (std::int64_t k = 0; k < w.at(p.triplet); ++k) (p.side > 0 ? plus : minus).push_back(p.id + "#" + std::to_string(k));
    }
    if (plus.size() != minus.size())
      throw Error(ErrorCode::kUnbalanced,
                  "class " + c + " has " + std::to_string(plus.size()) + " + portals and " + std::to_string(minus.size()) +
                      " - portals",
                  {"count", c, std::to_string(plus.size()), std::to_string(minus.size())});
    for (std::size_t i = 0; i < plus.size(); ++i) out.push_back({c, plus[i], minus[i]});
  }
  return out;
}

std::int64_t weighted_class_count(const HierarchyLedger& l, const std::string& edge_class, int side) {
  if (std::find(l.edge_classes.begin(), l.edge_classes.end(), edge_class) == l.edge_classes.end())
    throw Error(ErrorCode::kUnknownClass, "no edge class " + edge_class, {edge_class});
  const auto w = weights(l);
  std::int64_t total = 0;
  for (const EdgeRecord& e : l.edge_records)
    if (e.klass == edge_class && e.side == side) total = checked_add(total, w.at(e.triplet));
  return total;
}

}  // namespace cubetool
