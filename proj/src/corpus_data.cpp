#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cubetool/corpus.hpp"
#include "cubetool/json_io.hpp"

namespace cubetool {

namespace {

std::vector<CorpusFile> one_file(const std::string& filename, const Json& j) {
  return {CorpusFile{filename, canonical_dump(j)}};
}

Json cyclic_group(int order) {
  return {{"kind", "cyclic"},
          {"order", order},
          {"generators", {{"t", {1}}}},
          {"peripherals", Json::array({{{"name", "P"}, {"generators", {"t"}}}})}};
}

Json free_group() {
  return {{"kind", "free"}, {"rank", 2}, {"peripherals", Json::array({{{"name", "P"}, {"generators", {"a"}}}})}};
}

Json edge_pair(const std::string& name, const std::string& reverse, const std::string& from, const std::string& to,
               const Json& generators, const Json& psi, const Json& psi_reverse) {
  return Json::array({{{"name", name}, {"reverse", reverse}, {"from", from}, {"to", to}, {"generators", generators},
                       {"relators", Json::array()}, {"psi", psi}},
                      {{"name", reverse}, {"reverse", name}, {"from", to}, {"to", from}, {"generators", generators},
                       {"relators", Json::array()}, {"psi", psi_reverse}}});
}

Json gog_loop() {
  return {{"vertices", Json::array({{{"name", "v"}, {"generators", Json::array()}, {"relators", Json::array()}}})},
          {"edges", edge_pair("e", "ebar", "v", "v", Json::array(), Json::object(), Json::object())}};
}

Json gog_free_product() {
  return {{"vertices", Json::array({{{"name", "u"}, {"generators", {"x"}}, {"relators", Json::array({Json::array({"x", "x"})})}},
                                    {{"name", "v"}, {"generators", {"y"}}, {"relators", Json::array({Json::array({"y", "y", "y"})})}}})},
          {"edges", edge_pair("e", "ebar", "u", "v", Json::array(), Json::object(), Json::object())}};
}

Json gog_abelian_loop() {
  return {{"vertices", Json::array({{{"name", "v"}, {"generators", {"x"}}, {"relators", Json::array()}}})},
          {"edges", edge_pair("e", "ebar", "v", "v", {"z"}, {{"z", Json::array({"x"})}}, {{"z", Json::array({"x"})}})}};
}

Json portal(const std::string& id, const std::string& triplet, const std::string& side, int size, int stabilizer_index) {
  return {{"id", id}, {"triplet", triplet}, {"class", "c"}, {"side", side}, {"size", size},
          {"stabilizer_index", stabilizer_index}};
}

// Sizes 2 + 1 against 3; every modified size is 6.
Json ledger_balanced() {
  return {{"triplets", Json::array({{{"id", "Z1"}, {"weight", 1}, {"index", 6}},
                                    {{"id", "Z2"}, {"weight", 1}, {"index", 2}}})},
          {"classes", {"c"}},
          {"portals", Json::array({portal("P1", "Z1", "+", 2, 3), portal("P2", "Z1", "+", 1, 6),
                                   portal("P3", "Z2", "-", 3, 2)})},
          {"edge_classes", {"e"}},
          {"edge_records", Json::array({{{"class", "e"}, {"side", "+"}, {"triplet", "Z1"}, {"orbit", "x"}},
                                        {{"class", "e"}, {"side", "-"}, {"triplet", "Z1"}, {"orbit", "y"}}})}};
}

Json ledger_unbalanced() {
  return {{"triplets", Json::array({{{"id", "Z"}, {"weight", 1}, {"index", 1}}})},
          {"classes", {"c"}},
          {"portals", Json::array({portal("P1", "Z", "+", 2, 1), portal("P2", "Z", "-", 3, 1)})},
          {"edge_classes", Json::array()},
          {"edge_records", Json::array()}};
}

}  // namespace

std::vector<std::pair<std::string, std::function<std::vector<CorpusFile>()>>> extra_corpus_items() {
  return {
      {"group-cyclic3", [] { return one_file("group.json", cyclic_group(3)); }},
      {"group-integers", [] { return one_file("group.json", cyclic_group(0)); }},
      {"group-free2", [] { return one_file("group.json", free_group()); }},
      {"gog-loop", [] { return one_file("gog.json", gog_loop()); }},
      {"gog-free-product", [] { return one_file("gog.json", gog_free_product()); }},
      {"gog-abelian-loop", [] { return one_file("gog.json", gog_abelian_loop()); }},
      {"ledger-balanced", [] { return one_file("ledger.json", ledger_balanced()); }},
      {"ledger-unbalanced", [] { return one_file("ledger.json", ledger_unbalanced()); }},
  };
}

}  // namespace cubetool
