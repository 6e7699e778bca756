#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "docre/candidates.hpp"
#include "docre/corpus.hpp"
#include "docre/genelink.hpp"
#include "docre/ner.hpp"

using namespace docre;

namespace {

EntityDictionary genes() {
  EntityDictionary g(EntityType::Gene);
  for (auto s : {"EGFR", "BRAF", "KRAS", "ALK"}) g.add(s, s);
  return g;
}

EntityDictionary drugs() {
  EntityDictionary d(EntityType::Drug);
  d.add("gefitinib", "GEFITINIB");
  return d;
}

AnnotatedDocument annotate(const std::string& id, std::vector<std::vector<std::string>> paragraphs) {
  const auto doc = tokenize_document({id, std::move(paragraphs)});
  return {doc, detect_mentions(doc, drugs(), genes())};
}

std::array<int, 3> rule_hits(const AnnotatedDocument& doc) {
  std::vector<AnnotatedDocument> corpus{doc};
  std::array<int, 3> out{};
  const LinkPattern patterns[] = {LinkPattern::SameToken, LinkPattern::Adjacent,
                                  LinkPattern::SingleCharGap};
  for (int k = 0; k < 3; ++k)
    for (const auto& [g, n] : count_pattern_matches(corpus, genes(), "T790M", patterns[k]))
      out[k] += n;
  return out;
}

}  // namespace

TEST_CASE("each pattern example triggers its own rule only") {
  CHECK(rule_hits(annotate("a", {{"EGFR-T790M was found ."}})) == std::array<int, 3>{1, 0, 0});
  CHECK(rule_hits(annotate("b", {{"EGFR T790M was found ."}})) == std::array<int, 3>{0, 1, 0});
  CHECK(rule_hits(annotate("c", {{"EGFR - T790M was found ."}})) == std::array<int, 3>{0, 0, 1});
}

TEST_CASE("augmentation adds the gene from the first rule that matches") {
  for (const auto& [text, pattern] :
       std::vector<std::pair<std::string, LinkPattern>>{{"EGFR-T790M was found .", LinkPattern::SameToken},
                                                        {"EGFR T790M was found .", LinkPattern::Adjacent},
                                                        {"EGFR - T790M was found .", LinkPattern::SingleCharGap}}) {
    std::vector<AnnotatedDocument> corpus{annotate("x", {{text}})};
    const auto result = augment_global_map(corpus, genes(), {});
    REQUIRE(result.map.contains("T790M"));
    CHECK(result.map.at("T790M") == std::set<std::string>{"EGFR"});
    CHECK(result.pattern.at("T790M") == pattern);
  }
}

TEST_CASE("augmentation prefers an earlier rule and the most matched gene") {
  std::vector<AnnotatedDocument> corpus{
      annotate("a", {{"KRAS T790M here .", "KRAS T790M again ."}}),
      annotate("b", {{"BRAF T790M once ."}}),
      annotate("c", {{"ALK - T790M gap ."}}),
  };
  auto result = augment_global_map(corpus, genes(), {{"T790M", {"EGFR"}}});
  CHECK(result.pattern.at("T790M") == LinkPattern::Adjacent);
  CHECK(result.map.at("T790M") == std::set<std::string>{"EGFR", "KRAS"});

  corpus.push_back(annotate("d", {{"ALK-T790M token ."}}));
  result = augment_global_map(corpus, genes(), {});
  CHECK(result.pattern.at("T790M") == LinkPattern::SameToken);
  CHECK(result.added_gene.at("T790M") == "ALK");

  // Tie between two genes: smallest id.
  std::vector<AnnotatedDocument> tied{annotate("t", {{"KRAS T790M and BRAF T790M ."}})};
  CHECK(augment_global_map(tied, genes(), {}).added_gene.at("T790M") == "BRAF");
}

TEST_CASE("global map hit closest to the mutation wins") {
  // EGFR 3 tokens before T790M, BRAF 10 tokens away; both in the map.
  const auto doc = annotate("g", {{"EGFR a b T790M c d e f g h i j BRAF ."}});
  const auto a = assign_in_document(doc, {{"T790M", {"EGFR", "BRAF"}}});
  CHECK(a.assigned.at("T790M") == GeneAssignment{"EGFR", AssignmentRule::GlobalClosest});

  // Only genes in the map are eligible even if farther away.
  const auto b = assign_in_document(doc, {{"T790M", {"BRAF"}}});
  CHECK(b.assigned.at("T790M") == GeneAssignment{"BRAF", AssignmentRule::GlobalClosest});

  // Equal distance: earliest gene mention.
  const auto tie = annotate("t", {{"BRAF T790M EGFR ."}});
  CHECK(assign_in_document(tie, {{"T790M", {"EGFR", "BRAF"}}}).assigned.at("T790M").gene == "BRAF");
}

TEST_CASE("rule 4 then rule 5 then frequency") {
  const auto r4 = annotate("r4", {{"KRAS is common .", "We saw ALK mut and T790M ."}});
  CHECK(assign_in_document(r4, {}).assigned.at("T790M") ==
        GeneAssignment{"ALK", AssignmentRule::Rule4});

  const auto r5 = annotate("r5", {{"KRAS is common .", "ALK mutation status .", "T790M seen ."}});
  CHECK(assign_in_document(r5, {}).assigned.at("T790M") ==
        GeneAssignment{"ALK", AssignmentRule::Rule5});

  // "mut" in the paragraph but not the mutation's sentence is not rule 4;
  // "mutant" is not a rule 5 prefix match.
  const auto neither = annotate("n", {{"ALK mutant .", "T790M seen ."}, {"KRAS KRAS KRAS ."}});
  CHECK(assign_in_document(neither, {}).assigned.at("T790M") ==
        GeneAssignment{"KRAS", AssignmentRule::MostFrequent});

  const auto freq = annotate("f", {{"BRAF BRAF BRAF BRAF BRAF EGFR EGFR T790M ."}});
  CHECK(assign_in_document(freq, {}).assigned.at("T790M") ==
        GeneAssignment{"BRAF", AssignmentRule::MostFrequent});

  // Frequency tie: earliest first mention.
  const auto ftie = annotate("ft", {{"EGFR BRAF BRAF EGFR T790M ."}});
  CHECK(assign_in_document(ftie, {}).assigned.at("T790M").gene == "EGFR");
}

TEST_CASE("rule precedence: a firing rule shadows later ones") {
  // Rule 4 and rule 5 patterns both present, plus a frequent gene; the map
  // hit still wins.
  const auto doc = annotate("p", {{"KRAS KRAS KRAS .", "ALK mut T790M .", "BRAF mutation ."}});
  CHECK(assign_in_document(doc, {{"T790M", {"KRAS"}}}).assigned.at("T790M").rule ==
        AssignmentRule::GlobalClosest);
  CHECK(assign_in_document(doc, {}).assigned.at("T790M") ==
        GeneAssignment{"ALK", AssignmentRule::Rule4});
}

TEST_CASE("no gene mentions leaves the mutation unassigned") {
  const auto doc = annotate("z", {{"T790M alone ."}});
  const auto a = assign_in_document(doc, {{"T790M", {"EGFR"}}});
  CHECK(a.assigned.empty());
  CHECK(a.unassigned == std::vector<std::string>{"T790M"});
}

TEST_CASE("filter keeps exactly the assigned pairs and is idempotent") {
  AssignmentIndex idx;
  idx["d"].doc_id = "d";
  idx["d"].assigned["M"] = {"G1", AssignmentRule::Rule4};
  const RelationSchema schema;
  const std::vector<CandidateTuple> cands{{"d", {"D", "G1", "M"}, {}, {}},
                                          {"d", {"D", "G2", "M"}, {}, {}},
                                          {"d", {"D", "G1", "M2"}, {}, {}},
                                          {"e", {"D", "G1", "M"}, {}, {}}};
  const auto kept = filter(cands, schema, idx);
  REQUIRE(kept.size() == 1);
  CHECK(kept.front().entities == EntityTuple{"D", "G1", "M"});
  CHECK(filter(kept, schema, idx) == kept);

  // Randomized subset and idempotence checks.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    AssignmentIndex a;
    std::vector<CandidateTuple> cs;
    for (int c = 0; c < 12; ++c) {
      const std::string doc = "d" + std::to_string(rng() % 3);
      cs.push_back({doc, {"D", "G" + std::to_string(rng() % 3), "M" + std::to_string(rng() % 3)}, {}, {}});
      if (rng() % 2) a[doc].assigned["M" + std::to_string(rng() % 3)] = {"G" + std::to_string(rng() % 3), AssignmentRule::MostFrequent};
    }
    const auto once = filter(cs, schema, a);
    CHECK(filter(once, schema, a) == once);
    for (const auto& k : once) {
      CHECK(std::find(cs.begin(), cs.end(), k) != cs.end());
      CHECK(a.at(k.doc_id).assigned.at(k.entities[2]).gene == k.entities[1]);
    }
  }

  // Pair schemas without a gene-mutation pair pass through.
  const auto dm = RelationSchema::parse("drug,mutation");
  const std::vector<CandidateTuple> pairs{{"d", {"D", "M"}, {}, {}}};
  CHECK(filter(pairs, dm, {}) == pairs);
}
