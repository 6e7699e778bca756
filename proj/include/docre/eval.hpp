#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "docre/candidates.hpp"
#include "docre/ensemble.hpp"
#include "docre/ner.hpp"

namespace docre {

// doc_id -> annotated document-level facts.
using GoldSet = std::map<std::string, std::set<EntityTuple>>;

std::size_t gold_size(const GoldSet& gold);
bool is_gold(const GoldSet& gold, const std::string& doc_id, const EntityTuple& tuple);

// Predictions sorted by descending score; ties by (doc_id, entities).
std::vector<Prediction> rank(std::span<const Prediction> predictions);

// Sum over gold hits of precision at that rank, divided by the total number of
// gold facts (unpredicted facts count as misses). Throws DataError on empty
// gold or duplicate (doc, tuple) predictions.
double average_precision(std::span<const Prediction> predictions, const GoldSet& gold);

// Fraction of gold facts with at least one prediction/candidate.
double max_recall(std::span<const Prediction> predictions, const GoldSet& gold);
double max_recall(std::span<const CandidateTuple> candidates, const GoldSet& gold);

struct ThresholdMetrics {
  double threshold = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// Predictions with score >= threshold are extracted.
ThresholdMetrics metrics_at(std::span<const Prediction> predictions, const GoldSet& gold,
                            double threshold);

// Scans every distinct score as a threshold and returns the F1-maximizing
// one; ties go to the higher threshold.
double tune_threshold(std::span<const Prediction> predictions, const GoldSet& gold);

struct PrPoint {
  double threshold;
  double precision;
  double recall;
};

// One point per distinct score, in descending threshold order.
std::vector<PrPoint> pr_curve(std::span<const Prediction> predictions, const GoldSet& gold);

enum class CoScope { Sentence, Paragraph, CrossParagraph };

std::string_view to_string(CoScope scope);

// Narrowest unit in which all entities of `tuple` co-occur (schema order).
CoScope narrowest_scope(const AnnotatedDocument& doc, const RelationSchema& schema,
                        const EntityTuple& tuple);

struct ScopeBreakdown {
  std::size_t sentence = 0;
  std::size_t paragraph = 0;
  std::size_t cross_paragraph = 0;
  std::size_t total() const { return sentence + paragraph + cross_paragraph; }
};

// Classifies each correct extraction by narrowest co-occurrence scope.
// Throws DataError if a document is missing or lacks one of the entities.
ScopeBreakdown scope_breakdown(std::span<const Prediction> correct,
                               const std::map<std::string, const AnnotatedDocument*>& documents,
                               const RelationSchema& schema);

struct EvalReport {
  double auc = 0;
  double max_recall = 0;
  ThresholdMetrics at_threshold;
  std::size_t num_predictions = 0;
  std::size_t num_gold = 0;
};

EvalReport evaluate(std::span<const Prediction> predictions, const GoldSet& gold, double threshold);

}  // namespace docre
