#pragma once

#include <span>
#include <string>
#include <vector>

#include "docre/candidates.hpp"
#include "docre/genelink.hpp"

namespace docre {

enum class EnsembleKind { Max, NoisyOr };

std::string_view to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(std::string_view name);

// Document-level positive-class probability for one entity tuple.
struct Prediction {
  std::string doc_id;
  EntityTuple entities;
  double p = 0;
  std::string variant;
  std::vector<int> units;  // contributing discourse units
  bool operator==(const Prediction&) const = default;
};

// Positive-class probability of one unit-level candidate.
struct UnitPrediction {
  std::string doc_id;
  EntityTuple entities;
  int unit = -1;
  double p = 0;
};

// Max -> largest input; NoisyOr -> 1 - prod(1 - p_i). Throws
// std::invalid_argument on an empty list.
double combine(std::span<const double> probs, EnsembleKind kind);

// Combines the unit predictions of one tuple. Throws std::invalid_argument
// when empty or when the predictions disagree on doc/tuple.
Prediction document_score(std::span<const UnitPrediction> unit_predictions, EnsembleKind kind,
                          const std::string& variant);

// Groups unit predictions by (doc, tuple) and scores each group. Output is
// sorted by (doc_id, entities).
std::vector<Prediction> document_scores(std::span<const UnitPrediction> unit_predictions,
                                        EnsembleKind kind, const std::string& variant);

// Combines per-variant predictions tuple by tuple. A variant that did not
// score a tuple is skipped rather than counted as 0.
std::vector<Prediction> multiscale(std::span<const std::vector<Prediction>> variants,
                                   EnsembleKind kind, const std::string& name = "multiscale");

// Joins drug-gene or drug-mutation pair scores with the rule-based
// gene-mutation assignment into ternary (drug, gene, mutation) predictions.
// `pair_schema` identifies the pair; duplicates are combined with `kind`.
std::vector<Prediction> subrelation_join(std::span<const Prediction> pair_predictions,
                                         const RelationSchema& pair_schema,
                                         const AssignmentIndex& assignments, EnsembleKind kind,
                                         const std::string& name);

}  // namespace docre
