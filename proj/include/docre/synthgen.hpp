#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "docre/corpus.hpp"
#include "docre/eval.hpp"
#include "docre/genelink.hpp"

namespace docre {

// Co-occurrence scope a planted fact is realized at.
enum class PlantScope { Sentence, Paragraph, CrossParagraph };

std::string_view to_string(PlantScope scope);

struct SynthSpec {
  std::uint64_t seed = 7;
  int train_docs = 200;
  int dev_docs = 50;
  int test_docs = 50;
  int num_drugs = 40;
  int num_genes = 25;
  int num_mutations = 60;
  int facts_per_doc = 2;
  // sentence / paragraph-only / cross-paragraph fractions
  std::array<double, 3> scope_mix{0.3, 0.3, 0.4};
  // Unrelated (drug, gene, mutation) triples mentioned per document.
  int distractors_per_doc = 2;
  int paragraphs_per_doc = 6;
  int sentences_per_paragraph = 3;
  // Diluted mode: each fact is expressed by `diluted_cues` weak-cue sentences
  // in separate paragraphs, and each distractor by 1..diluted_cues-1 of the
  // same sentences.
  bool diluted = false;
  int diluted_cues = 3;

  // Throws DataError on negative counts, mix not summing to 1, or more facts
  // than entity combinations/paragraph slots allow.
  void validate() const;
};

void to_json(nlohmann::json& j, const SynthSpec& s);
void from_json(const nlohmann::json& j, SynthSpec& s);

struct PlantedFact {
  std::string doc_id;
  EntityTuple entities;  // drug, gene, mutation
  PlantScope scope = PlantScope::Sentence;
};

struct SynthSplit {
  std::string name;
  std::vector<RawDocument> documents;
  std::vector<PlantedFact> facts;
  GoldSet gold() const;
};

struct SynthCorpus {
  std::vector<SynthSplit> splits;  // train, dev, test
  // Facts of the training split.
  KnowledgeBase kb;
  // (surface, canonical id) rows.
  std::vector<std::pair<std::string, std::string>> drugs;
  std::vector<std::pair<std::string, std::string>> genes;
  GeneMutationMap seed_map;

  const SynthSplit& split(std::string_view name) const;
};

// Deterministic for a given spec. Entities are distinct within a document, and
// no tuple of a document's entities other than its planted facts equals any
// planted fact of the corpus.
SynthCorpus synthesize(const SynthSpec& spec);

// Writes {train,dev,test}.jsonl, gold_{split}.tsv, kb.tsv, drugs.tsv,
// genes.tsv, seed_map.tsv and spec.json. Returns the written paths.
std::vector<std::filesystem::path> write_corpus(const SynthCorpus& corpus, const SynthSpec& spec,
                                                const std::filesystem::path& dir);

}  // namespace docre
