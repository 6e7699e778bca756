#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "docre/candidates.hpp"
#include "docre/ensemble.hpp"
#include "docre/eval.hpp"
#include "docre/genelink.hpp"
#include "docre/io.hpp"
#include "docre/model/checkpoint.hpp"
#include "docre/model/trainer.hpp"
#include "docre/ner.hpp"

namespace docre::pipeline {

struct Dictionaries {
  EntityDictionary drugs{EntityType::Drug};
  EntityDictionary genes{EntityType::Gene};

  static Dictionaries load(const std::filesystem::path& drugs, const std::filesystem::path& genes);
};

// Mention detection and masking.
ProcessedDocument preprocess(const Document& doc, const Dictionaries& dicts);
std::vector<ProcessedDocument> preprocess(std::span<const Document> docs, const Dictionaries& dicts,
                                          const std::set<std::string>& exclude = {});

// Augments the seed map from the corpus, then assigns a gene to every
// mutation of every document.
AssignmentIndex link(std::span<const ProcessedDocument> docs, const EntityDictionary& genes,
                     GeneMutationMap seed_map, AugmentResult* augmented = nullptr);

struct LabelOptions {
  ScaleKind scale = ScaleKind::Document;
  const KnowledgeBase* kb = nullptr;            // null: candidates stay unlabeled
  const AssignmentIndex* assignments = nullptr; // non-null: gene-mutation filter on
  std::optional<std::size_t> max_negatives;
  std::uint64_t seed = 0;
};

// Candidate generation, optional filter, distant labels, optional negative
// cap. A KB with more columns than the schema is projected onto the schema's
// entity types (ternary KB column order is drug, gene, mutation).
std::vector<CandidateTuple> label(std::span<const ProcessedDocument> docs,
                                  const RelationSchema& schema, const LabelOptions& options);

// One batch per document with at least one candidate, in document order.
std::vector<model::DocumentBatch> make_batches(std::span<const ProcessedDocument> docs,
                                               std::span<const CandidateTuple> candidates,
                                               const RelationSchema& schema,
                                               const model::Vocabulary& vocab,
                                               const model::ModelConfig& config);

struct TrainInputs {
  model::Variant variant = model::Variant::DocLevel;
  model::ModelConfig config;  // unit kind and scope are set from the variant
  RelationSchema schema;
  std::span<const ProcessedDocument> docs;
  std::span<const CandidateTuple> candidates;
  std::optional<std::filesystem::path> word_vectors;
  model::TrainHooks hooks;
  // When set (and hooks.dev_score is not), dev AP drives early stopping.
  const GoldSet* dev_gold = nullptr;
  std::span<const ProcessedDocument> dev_docs;
  std::span<const CandidateTuple> dev_candidates;
  EnsembleKind unit_kind = EnsembleKind::NoisyOr;
};

model::TrainedModel train(const TrainInputs& inputs);

// Document-level positive-class scores. Per-unit variants combine their unit
// scores with `unit_kind`; the document variant scores tuples directly.
// Output sorted by (doc_id, entities).
std::vector<Prediction> predict(const model::ModelParams<double>& params,
                                const model::ModelConfig& config, const RelationSchema& schema,
                                const model::Vocabulary& vocab, model::Variant variant,
                                std::span<const ProcessedDocument> docs,
                                std::span<const CandidateTuple> candidates, EnsembleKind unit_kind);
std::vector<Prediction> predict(const model::TrainedModel& model,
                                std::span<const ProcessedDocument> docs,
                                std::span<const CandidateTuple> candidates, EnsembleKind unit_kind);

// Dev AP of the current parameters; for TrainHooks::dev_score. Holds
// references to its arguments.
std::function<double(const model::ModelParams<double>&)> dev_scorer(
    const model::ModelConfig& config, const RelationSchema& schema, const model::Vocabulary& vocab,
    model::Variant variant, std::span<const ProcessedDocument> docs,
    std::span<const CandidateTuple> candidates, const GoldSet& gold, EnsembleKind unit_kind);

}  // namespace docre::pipeline
