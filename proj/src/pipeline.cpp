#include "docre/pipeline.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include "docre/errors.hpp"

namespace docre::pipeline {

using model::Variant;

Dictionaries Dictionaries::load(const std::filesystem::path& drugs,
                                const std::filesystem::path& genes) {
  return {EntityDictionary::load(drugs, EntityType::Drug),
          EntityDictionary::load(genes, EntityType::Gene)};
}

ProcessedDocument preprocess(const Document& doc, const Dictionaries& dicts) {
  ProcessedDocument out;
  out.original.document = doc;
  out.original.mentions = detect_mentions(doc, dicts.drugs, dicts.genes);
  out.masked = mask(doc, out.original.mentions);
  return out;
}

std::vector<ProcessedDocument> preprocess(std::span<const Document> docs, const Dictionaries& dicts,
                                          const std::set<std::string>& exclude) {
  std::vector<ProcessedDocument> out;
  for (const auto& d : docs)
    if (!exclude.contains(d.id())) out.push_back(preprocess(d, dicts));
  return out;
}

AssignmentIndex link(std::span<const ProcessedDocument> docs, const EntityDictionary& genes,
                     GeneMutationMap seed_map, AugmentResult* augmented) {
  std::vector<AnnotatedDocument> originals;
  originals.reserve(docs.size());
  for (const auto& d : docs) originals.push_back(d.original);
  auto aug = augment_global_map(originals, genes, std::move(seed_map));
  AssignmentIndex out;
  for (const auto& d : originals) out.emplace(d.document.id(), assign_in_document(d, aug.map));
  if (augmented) *augmented = std::move(aug);
  return out;
}

std::vector<CandidateTuple> label(std::span<const ProcessedDocument> docs,
                                  const RelationSchema& schema, const LabelOptions& options) {
  schema.validate();
  std::vector<CandidateTuple> out;
  for (const auto& d : docs) {
    auto cands = generate(d.masked, schema, options.scale);
    out.insert(out.end(), cands.begin(), cands.end());
  }
  if (options.assignments) out = filter(out, schema, *options.assignments);
  if (options.kb) {
    std::size_t kb_arity = options.kb->empty() ? schema.arity() : options.kb->begin()->size();
    if (kb_arity == std::size_t(schema.arity())) {
      distant_label(out, *options.kb);
    } else {
      const auto columns = projection_columns(RelationSchema::ternary(), schema);
      if (kb_arity != 3) throw DataError("KB arity does not match the relation schema");
      distant_label(out, project(*options.kb, columns));
    }
  }
  if (options.max_negatives) {
    if (!options.kb) throw DataError("negative capping needs labeled candidates");
    out = cap_negatives(std::move(out), *options.max_negatives, options.seed);
  }
  return out;
}

std::vector<model::DocumentBatch> make_batches(std::span<const ProcessedDocument> docs,
                                               std::span<const CandidateTuple> candidates,
                                               const RelationSchema& schema,
                                               const model::Vocabulary& vocab,
                                               const model::ModelConfig& config) {
  std::map<std::string, std::vector<CandidateTuple>> by_doc;
  for (const auto& c : candidates) by_doc[c.doc_id].push_back(c);
  std::set<std::string> known;
  std::vector<model::DocumentBatch> out;
  for (const auto& d : docs) {
    known.insert(d.masked.document.id());
    auto it = by_doc.find(d.masked.document.id());
    if (it == by_doc.end()) continue;
    out.push_back(model::make_batch(d.masked, it->second, schema, vocab, config));
  }
  for (const auto& [id, cands] : by_doc)
    if (!known.contains(id)) throw DataError("candidates refer to unknown document " + id);
  return out;
}

model::TrainedModel train(const TrainInputs& in) {
  model::TrainedModel out;
  out.variant = in.variant;
  out.config = in.config;
  out.config.apply_variant(in.variant);
  out.config.num_classes = in.schema.num_classes;
  out.config.validate();
  out.schema = in.schema;

  std::vector<AnnotatedDocument> masked;
  for (const auto& d : in.docs) masked.push_back(d.masked);
  out.vocab = model::Vocabulary::build(masked);

  auto params = model::ModelParams<double>::init(out.config, out.vocab.size(), in.schema.arity(),
                                                 out.config.seed);
  if (in.word_vectors) {
    const int n = model::load_word_vectors(*in.word_vectors, out.vocab, params.word_vectors);
    std::clog << "loaded " << n << " word vectors\n";
  }
  const auto batches = make_batches(in.docs, in.candidates, in.schema, out.vocab, out.config);
  auto hooks = in.hooks;
  if (in.dev_gold && !hooks.dev_score)
    hooks.dev_score = dev_scorer(out.config, out.schema, out.vocab, out.variant, in.dev_docs,
                                 in.dev_candidates, *in.dev_gold, in.unit_kind);
  if (out.config.precision == 32) {
    out.params = model::train(params.cast<float>(), batches, out.config, hooks).cast<double>();
  } else {
    out.params = model::train(std::move(params), batches, out.config, hooks);
  }
  return out;
}

std::vector<Prediction> predict(const model::ModelParams<double>& params,
                                const model::ModelConfig& config, const RelationSchema& schema,
                                const model::Vocabulary& vocab, Variant variant,
                                std::span<const ProcessedDocument> docs,
                                std::span<const CandidateTuple> candidates, EnsembleKind unit_kind) {
  const std::string name(to_string(variant));
  const bool per_unit = config.scope == model::Scope::SingleUnit;
  std::vector<Prediction> out;
  std::vector<UnitPrediction> unit_preds;

  std::map<std::string, std::vector<CandidateTuple>> by_doc;
  for (const auto& c : candidates) by_doc[c.doc_id].push_back(c);
  for (const auto& d : docs) {
    auto it = by_doc.find(d.masked.document.id());
    if (it == by_doc.end()) continue;
    const auto& cands = it->second;
    const auto batch = model::make_batch(d.masked, cands, schema, vocab, config);
    const model::DocumentPass<double> pass(params, config, batch);
    const auto& probs = pass.probabilities();
    for (int c = 0; c < pass.num_candidates(); ++c) {
      const double p = probs.col(c).tail(probs.rows() - 1).sum();
      if (per_unit) {
        unit_preds.push_back({cands[c].doc_id, cands[c].entities, cands[c].scale.unit, p});
      } else {
        out.push_back({cands[c].doc_id, cands[c].entities, p, name, pass.contributing_units(c)});
      }
    }
  }
  if (per_unit) return document_scores(unit_preds, unit_kind, name);
  std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
    return std::tie(a.doc_id, a.entities) < std::tie(b.doc_id, b.entities);
  });
  for (std::size_t k = 1; k < out.size(); ++k)
    if (out[k].doc_id == out[k - 1].doc_id && out[k].entities == out[k - 1].entities)
      throw DataError("duplicate document-scale candidate in " + out[k].doc_id);
  return out;
}

std::vector<Prediction> predict(const model::TrainedModel& m,
                                std::span<const ProcessedDocument> docs,
                                std::span<const CandidateTuple> candidates, EnsembleKind unit_kind) {
  return predict(m.params, m.config, m.schema, m.vocab, m.variant, docs, candidates, unit_kind);
}

std::function<double(const model::ModelParams<double>&)> dev_scorer(
    const model::ModelConfig& config, const RelationSchema& schema, const model::Vocabulary& vocab,
    Variant variant, std::span<const ProcessedDocument> docs,
    std::span<const CandidateTuple> candidates, const GoldSet& gold, EnsembleKind unit_kind) {
  return [&config, &schema, &vocab, variant, docs, candidates, &gold,
          unit_kind](const model::ModelParams<double>& params) {
    const auto preds = predict(params, config, schema, vocab, variant, docs, candidates, unit_kind);
    return average_precision(preds, gold);
  };
}

}  // namespace docre::pipeline
