#include <doctest.h>

#include <algorithm>
#include <random>

#include "docre/errors.hpp"
#include "docre/eval.hpp"
#include "oracles.hpp"

using namespace docre;

namespace {

Prediction pred(const std::string& e, double p, const std::string& doc = "d") {
  return {doc, {e}, p, "v", {}};
}

}  // namespace

TEST_CASE("average precision worked examples") {
  const GoldSet gold{{"d", {{"a"}, {"c"}}}};
  const std::vector<Prediction> ranked{pred("a", 0.9), pred("b", 0.8), pred("c", 0.7)};
  CHECK(average_precision(ranked, gold) == doctest::Approx((1.0 + 2.0 / 3.0) / 2).epsilon(1e-12));

  const std::vector<Prediction> perfect{pred("a", 0.9), pred("c", 0.8), pred("b", 0.1)};
  CHECK(average_precision(perfect, gold) == 1.0);

  const std::vector<Prediction> half{pred("a", 0.9), pred("b", 0.8)};
  CHECK(average_precision(half, gold) == doctest::Approx(0.5));
  CHECK(max_recall(half, gold) == 0.5);

  CHECK_THROWS_AS(average_precision(ranked, GoldSet{}), DataError);
  const std::vector<Prediction> dup{pred("a", 0.9), pred("a", 0.1)};
  CHECK_THROWS_AS(average_precision(dup, gold), DataError);
}

TEST_CASE("average precision matches the step-curve area oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto [preds, gold] = oracle::random_ranking(rng, 12);
    if (gold_size(gold) == 0) continue;
    const double ap = average_precision(preds, gold);
    CHECK(ap == doctest::Approx(oracle::curve_area(preds, gold)).epsilon(1e-12));
    CHECK(ap <= max_recall(preds, gold) + 1e-12);
    CHECK(ap >= 0.0);
    std::shuffle(preds.begin(), preds.end(), rng);
    CHECK(average_precision(preds, gold) == ap);
  }
}

TEST_CASE("threshold metrics and tuning") {
  const GoldSet gold{{"d", {{"a"}, {"c"}}}};
  const std::vector<Prediction> preds{pred("a", 0.9), pred("b", 0.8), pred("c", 0.7), pred("e", 0.2)};
  const auto m = metrics_at(preds, gold, 0.7);
  CHECK(m.tp == 2);
  CHECK(m.fp == 1);
  CHECK(m.fn == 0);
  CHECK(m.precision == doctest::Approx(2.0 / 3));
  CHECK(m.f1 == doctest::Approx(0.8));
  CHECK(tune_threshold(preds, gold) == 0.7);

  const std::vector<Prediction> tied{pred("a", 0.9), pred("b", 0.5)};
  const GoldSet one{{"d", {{"a"}}}};
  CHECK(tune_threshold(tied, one) == 0.9);
  CHECK(metrics_at(tied, one, 0.95).f1 == 0.0);
  CHECK_THROWS_AS(tune_threshold({}, one), DataError);

  const auto report = evaluate(preds, gold, 0.5);
  CHECK(report.num_gold == 2);
  CHECK(report.num_predictions == 4);
  CHECK(report.at_threshold.recall == 1.0);
  CHECK(report.max_recall == 1.0);
}

TEST_CASE("precision-recall curve has one point per distinct score") {
  const GoldSet gold{{"d", {{"a"}, {"c"}}}};
  const std::vector<Prediction> preds{pred("a", 0.9), pred("b", 0.5), pred("c", 0.5)};
  const auto curve = pr_curve(preds, gold);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].threshold == 0.9);
  CHECK(curve[0].precision == 1.0);
  CHECK(curve[0].recall == 0.5);
  CHECK(curve[1].precision == doctest::Approx(2.0 / 3));
  CHECK(curve[1].recall == 1.0);
}

TEST_CASE("co-occurrence scope breakdown") {
  // p0: "DRUG_X GENE_X ." "MUT_X ."  p1: "DRUG_X MUT_X GENE_X ."  p2: "DRUG_X ."
  Document d("d", {{{"DRUG_X", "GENE_X", "."}, {"MUT_X", "."}},
                   {{"DRUG_X", "MUT_X", "GENE_X", "."}},
                   {{"DRUG_X", "."}}});
  auto m = [&](const std::string& id, EntityType t, int tok) {
    return Mention{id, t, tok, 1, d.coord(tok).sentence, d.coord(tok).paragraph};
  };
  AnnotatedDocument doc{d,
                        {m("A", EntityType::Drug, 0), m("G", EntityType::Gene, 1),
                         m("M", EntityType::Mutation, 3), m("B", EntityType::Drug, 5),
                         m("N", EntityType::Mutation, 6), m("H", EntityType::Gene, 7),
                         m("C", EntityType::Drug, 9)}};
  RelationSchema schema;
  CHECK(narrowest_scope(doc, schema, {"A", "G", "M"}) == CoScope::Paragraph);
  CHECK(narrowest_scope(doc, schema, {"B", "H", "N"}) == CoScope::Sentence);
  CHECK(narrowest_scope(doc, schema, {"C", "G", "M"}) == CoScope::CrossParagraph);
  CHECK_THROWS_AS(narrowest_scope(doc, schema, {"Z", "G", "M"}), DataError);

  const std::vector<Prediction> correct{{"d", {"A", "G", "M"}, 1, "v", {}},
                                        {"d", {"B", "H", "N"}, 1, "v", {}},
                                        {"d", {"C", "G", "M"}, 1, "v", {}},
                                        {"d", {"C", "H", "N"}, 1, "v", {}}};
  const std::map<std::string, const AnnotatedDocument*> docs{{"d", &doc}};
  const auto b = scope_breakdown(correct, docs, schema);
  CHECK(b.sentence == 1);
  CHECK(b.paragraph == 1);
  CHECK(b.cross_paragraph == 2);
  CHECK(b.total() == 4);
  CHECK(to_string(CoScope::Paragraph) == "cross_sentence_within_paragraph");
}

TEST_CASE("candidate coverage bounds recall") {
  const GoldSet gold{{"d", {{"a", "b"}, {"c", "e"}}}, {"f", {{"a", "b"}}}};
  const std::vector<CandidateTuple> cands{{"d", {"a", "b"}, {ScaleKind::Sentence, 0}, {}},
                                          {"d", {"a", "b"}, {ScaleKind::Sentence, 2}, {}},
                                          {"f", {"c", "e"}, {ScaleKind::Sentence, 0}, {}}};
  CHECK(max_recall(cands, gold) == doctest::Approx(1.0 / 3));
}
