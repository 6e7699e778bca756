#include <doctest.h>

#include <random>

#include "docre/candidates.hpp"
#include "docre/errors.hpp"
#include "oracles.hpp"

using namespace docre;

namespace {

Mention at(const Document& d, const std::string& id, EntityType type, int token) {
  const auto& c = d.coord(token);
  return {id, type, token, 1, c.sentence, c.paragraph};
}

// p0: "DRUG_X GENE_X w ." / "w w ." ; p1: "w ." ; p2: "MUT_X w ."
AnnotatedDocument split_doc() {
  Document d("s", {{{"DRUG_X", "GENE_X", "w", "."}, {"w", "w", "."}}, {{"w", "."}}, {{"MUT_X", "w", "."}}});
  return {d, {at(d, "D", EntityType::Drug, 0), at(d, "G", EntityType::Gene, 1),
              at(d, "M", EntityType::Mutation, 9)}};
}

}  // namespace

TEST_CASE("schema subsets") {
  const RelationSchema ternary;
  CHECK(ternary.subsets() == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
  RelationSchema four;
  four.slots = {EntityType::Drug, EntityType::Gene, EntityType::Mutation, EntityType::Drug};
  CHECK(four.subsets().size() == 11);
  CHECK(RelationSchema::parse("drug,mutation").arity() == 2);
  CHECK(RelationSchema::parse("drug,gene,mutation") == ternary);
  CHECK_THROWS_AS(RelationSchema::parse("drug"), DataError);
  CHECK_THROWS_AS(RelationSchema::parse("drug,protein"), DataError);
}

TEST_CASE("entities split across paragraphs only form document candidates") {
  const auto doc = split_doc();
  const RelationSchema schema;
  const auto doc_c = generate(doc, schema, ScaleKind::Document);
  REQUIRE(doc_c.size() == 1);
  CHECK(doc_c[0].entities == EntityTuple{"D", "G", "M"});
  CHECK(doc_c[0].scale == Scale{ScaleKind::Document, -1});
  CHECK(generate(doc, schema, ScaleKind::Paragraph).empty());
  CHECK(generate(doc, schema, ScaleKind::Sentence).empty());
}

TEST_CASE("co-occurrence in one sentence yields candidates at every scale") {
  Document d("c", {{{"DRUG_X", "GENE_X", "MUT_X", "."}, {"w", "."}}});
  const AnnotatedDocument doc{d, {at(d, "D", EntityType::Drug, 0), at(d, "G", EntityType::Gene, 1),
                                  at(d, "M", EntityType::Mutation, 2)}};
  for (auto scale : {ScaleKind::Sentence, ScaleKind::Paragraph, ScaleKind::Document})
    CHECK(generate(doc, RelationSchema{}, scale).size() == 1);
  CHECK(generate(doc, RelationSchema{}, ScaleKind::Sentence)[0].scale == Scale{ScaleKind::Sentence, 0});
}

TEST_CASE("document-scale cross product") {
  Document d("x", {{{"DRUG_X", "DRUG_X", "GENE_X", "MUT_X", "MUT_X"}}});
  const AnnotatedDocument doc{
      d, {at(d, "D1", EntityType::Drug, 0), at(d, "D2", EntityType::Drug, 1),
          at(d, "G", EntityType::Gene, 2), at(d, "M1", EntityType::Mutation, 3),
          at(d, "M2", EntityType::Mutation, 4)}};
  CHECK(generate(doc, RelationSchema{}, ScaleKind::Document).size() == 4);
}

TEST_CASE("mention tuples") {
  // E1 (drug) twice and E2 (gene) once in unit 1; nothing elsewhere.
  Document d("m", {{{"w", "."}}, {{"DRUG_X", "GENE_X", "DRUG_X", "."}}, {{"MUT_X"}}});
  const AnnotatedDocument doc{d, {at(d, "D", EntityType::Drug, 2), at(d, "G", EntityType::Gene, 3),
                                  at(d, "D", EntityType::Drug, 4), at(d, "M", EntityType::Mutation, 6)}};
  const CandidateTuple cand{"m", {"D", "G", "M"}, {ScaleKind::Document, -1}, {}};
  const RelationSchema schema;
  const std::vector<int> dg{0, 1}, dgm{0, 1, 2};
  auto set = mention_tuples(cand, doc, schema, dg, UnitKind::Paragraph);
  REQUIRE(set.tuples.size() == 2);
  CHECK(set.tuples[0] == MentionTuple{{2, 3}, 1});
  CHECK(set.tuples[1] == MentionTuple{{4, 3}, 1});
  CHECK(mention_tuples(cand, doc, schema, dgm, UnitKind::Paragraph).tuples.empty());
  set = mention_tuples(cand, doc, schema, dg, UnitKind::Paragraph, 1);
  REQUIRE(set.tuples.size() == 1);
  CHECK(set.tuples[0].tokens == std::vector<int>{2, 3});
}

TEST_CASE("mention tuples cover each co-occurring combination once") {
  std::mt19937_64 rng(21);
  const RelationSchema schema;
  for (int trial = 0; trial < 100; ++trial) {
    const auto doc = oracle::random_micro_document(rng, "r", 6);
    for (const auto& c : generate(doc, schema, ScaleKind::Document)) {
      const std::vector<int> all{0, 1, 2};
      const auto set = mention_tuples(c, doc, schema, all, UnitKind::Sentence);
      std::set<std::vector<int>> seen;
      for (const auto& t : set.tuples) {
        CHECK(seen.insert(t.tokens).second);
        for (std::size_t k = 0; k < 3; ++k) {
          CHECK(doc.document.unit_of(t.tokens[k], UnitKind::Sentence) == t.unit);
        }
      }
      std::size_t expected = 0;
      for (const auto& a : doc.mentions)
        for (const auto& b : doc.mentions)
          for (const auto& m : doc.mentions)
            if (a.entity_id == c.entities[0] && a.type == EntityType::Drug &&
                b.entity_id == c.entities[1] && b.type == EntityType::Gene &&
                m.entity_id == c.entities[2] && m.type == EntityType::Mutation &&
                a.sentence_index == b.sentence_index && b.sentence_index == m.sentence_index)
              ++expected;
      CHECK(set.tuples.size() == expected);
    }
  }
}

TEST_CASE("generate matches brute force and nests across scales") {
  std::mt19937_64 rng(8);
  const RelationSchema schema;
  for (int trial = 0; trial < 50; ++trial) {
    const auto doc = oracle::random_micro_document(rng, "b" + std::to_string(trial), 6);
    std::set<EntityTuple> previous;
    bool first = true;
    for (auto scale : {ScaleKind::Sentence, ScaleKind::Paragraph, ScaleKind::Document}) {
      const auto got = generate(doc, schema, scale);
      CHECK(oracle::keys(got) == oracle::brute_force_candidates(doc, schema, scale));
      std::set<EntityTuple> tuples;
      for (const auto& c : got) tuples.insert(c.entities);
      if (!first) CHECK(std::includes(tuples.begin(), tuples.end(), previous.begin(), previous.end()));
      previous = tuples;
      first = false;
    }
  }
}

TEST_CASE("distant labels depend only on entity ids") {
  std::vector<CandidateTuple> cands{{"d", {"D", "G", "M"}, {ScaleKind::Sentence, 0}, {}},
                                    {"d", {"D", "G", "M2"}, {ScaleKind::Document, -1}, {}},
                                    {"d", {"D", "G", "M"}, {ScaleKind::Document, -1}, {}}};
  distant_label(cands, {{"D", "G", "M"}});
  CHECK(cands[0].label == 1);
  CHECK(cands[1].label == 0);
  CHECK(cands[2].label == 1);
}

TEST_CASE("projection onto pair schemas") {
  const KnowledgeBase kb{{"D", "G", "M"}, {"D", "G2", "M"}};
  const auto cols = projection_columns(RelationSchema{}, RelationSchema::parse("drug,mutation"));
  CHECK(cols == std::vector<int>{0, 2});
  CHECK(project(kb, cols) == KnowledgeBase{{"D", "M"}});
}

TEST_CASE("negative capping keeps positives and is seeded") {
  std::vector<CandidateTuple> cands;
  for (int k = 0; k < 20; ++k)
    cands.push_back({k < 10 ? "a" : "b", {"D" + std::to_string(k), "G", "M"}, {}, k % 7 == 0 ? 1 : 0});
  const auto capped = cap_negatives(cands, 3, 99);
  int positives = 0;
  std::map<std::string, int> negatives;
  for (const auto& c : capped) (*c.label ? positives : negatives[c.doc_id]) += 1;
  CHECK(positives == 3);
  CHECK(negatives["a"] == 3);
  CHECK(negatives["b"] == 3);
  CHECK(cap_negatives(cands, 3, 99) == capped);
}
