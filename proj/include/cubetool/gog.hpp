#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubetool/cusped.hpp"

namespace cubetool {

struct Letter {
  std::string generator;
  bool inverse = false;

  bool operator==(const Letter& o) const { return generator == o.generator && inverse == o.inverse; }
};

using Word = std::vector<Letter>;

// Tokens "x" and "x^-1".
Word parse_word(const std::vector<std::string>& tokens);
std::vector<std::string> word_tokens(const Word& w);
std::string format_word(const Word& w);  // "1" for the empty word
Word invert_word(const Word& w);
Word free_reduce(Word w);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

std::string format_presentation(const Presentation& p);
nlohmann::json presentation_to_json(const Presentation& p);
// {"generators": [...], "relators": [["x", "x"], ...]}. Throws
// Error{kMalformedInput} for a relator over unknown generators.
Presentation presentation_from_json(const nlohmann::json& j);

struct GogVertex {
  std::string name;
  Presentation group;
};

struct GogEdge {
  std::string name;
  std::string reverse;
  std::string from;
  std::string to;
  Presentation group;
  std::map<std::string, Word> psi;  // edge-group generator -> word in the group at `to`
};

struct GraphOfGroups {
  std::vector<GogVertex> vertices;
  std::vector<GogEdge> edges;  // oriented, both orientations listed

  const GogVertex& vertex(const std::string& name) const;
  const GogEdge& edge(const std::string& name) const;
};

// Checks the edge pairing, attachment maps, generator names and
// connectivity. Throws Error{kMalformedInput}. Returns warnings for
// attachment maps whose relator images could not be checked.
std::vector<std::string> validate_gog(const GraphOfGroups& g);

// {"vertices": [{"name", "generators", "relators"}],
//  "edges": [{"name", "reverse", "from", "to", "generators", "relators",
//             "psi": {"z": ["x"]}}]}
GraphOfGroups gog_from_json(const nlohmann::json& j);

struct Pi1Presentation {
  Presentation presentation;
  // Oriented edge -> its image: empty on tree edges, otherwise the edge
  // symbol or its inverse.
  std::map<std::string, Word> edge_words;
  std::vector<std::string> warnings;
};

// Vertex generators plus one symbol per non-tree unoriented edge, named by
// the smaller of its two orientations. Relators are the vertex relators and
// e psi_e(g) e^-1 psi_ebar(g)^-1 per edge-group generator, freely reduced
// after the tree edges are set to the identity. `tree` names unoriented
// edges by either orientation. Throws Error{kNotSpanningTree}.
Pi1Presentation pi1_presentation(const GraphOfGroups& g, const std::string& base, const std::vector<std::string>& tree);

// The element g0 e1 g1 ... en gn as a reduced word in the generators of
// pi1_presentation(g, base, tree). elements[i] is a word in the group at the
// end of edge i (at the base for i = 0). Throws Error{kNotACircuit} with the
// failing index as detail.
Word circuit_element(const GraphOfGroups& g, const std::string& base, const std::vector<std::string>& tree,
                     const std::vector<std::string>& edges, const std::vector<Word>& elements);

// Homomorphisms into a finite group, counted over all generator
// assignments. Throws Error{kMalformedInput} for an infinite target and
// Error{kBudgetExceeded} past the assignment budget.
std::uint64_t hom_count(const Presentation& p, const GroupOracle& target, std::uint64_t budget = 20000000);

// Free rank of the abelianization.
int abelian_rank(const Presentation& p);

struct LedgerTriplet {
  std::string id;
  std::int64_t weight = 1;
  std::int64_t index = 1;  // pending subgroup index
};

struct PortalRecord {
  std::string id;
  std::string triplet;
  std::string klass;
  int side = 1;  // +1 or -1
  std::int64_t size = 1;
  std::int64_t stabilizer_index = 1;
};

struct EdgeRecord {
  std::string klass;
  int side = 1;
  std::string triplet;
  std::string orbit;
};

struct HierarchyLedger {
  std::vector<LedgerTriplet> triplets;
  std::vector<std::string> classes;       // portal compatibility classes
  std::vector<PortalRecord> portals;
  std::vector<std::string> edge_classes;  // (edge class, color) labels
  std::vector<EdgeRecord> edge_records;

  const LedgerTriplet& triplet(const std::string& id) const;
};

// Throws Error{kMalformedInput}.
void validate_ledger(const HierarchyLedger& l);
HierarchyLedger ledger_from_json(const nlohmann::json& j);
nlohmann::json ledger_to_json(const HierarchyLedger& l);

struct SizeIdentityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Modified sizes by portal id: each must equal stabilizer index times size,
// and compatible portals must agree.
SizeIdentityReport size_identities(const HierarchyLedger& l, const std::map<std::string, std::int64_t>& modified_sizes);

// Weights become (product of the other triplets' indices) times the old
// weight. A portal record splits into index / stabilizer_index records of
// size stabilizer_index * size, and an edge record into index records.
// Indices reset to 1. Throws Error{kMalformedInput} when a stabilizer index
// does not divide its triplet's index.
HierarchyLedger virtual_modify(const HierarchyLedger& l);

struct ClassBalance {
  std::string klass;
  std::int64_t plus = 0;
  std::int64_t minus = 0;
};

struct GluingReport {
  std::vector<ClassBalance> size_sums;    // weighted portal sizes per side
  std::vector<ClassBalance> edge_counts;  // weighted edge records per side
  bool modified = false;
  std::vector<ClassBalance> portal_counts;  // weighted portal counts, after modification
};

// Throws Error{kUnbalanced} with details {form, class, plus, minus}.
GluingReport gluing_check(const HierarchyLedger& l, bool modify);

struct PortalPair {
  std::string klass;
  std::string plus;
  std::string minus;
};

// Per class, + and - portals expanded by their triplet's weight
// ("<portal>#<k>"), paired in order. Throws Error{kUnbalanced}.
std::vector<PortalPair> portal_matching(const HierarchyLedger& l);

// Throws Error{kUnknownClass}.
std::int64_t weighted_class_count(const HierarchyLedger& l, const std::string& edge_class, int side);

}  // namespace cubetool
