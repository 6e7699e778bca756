#pragma once

#include <filesystem>

#include "docre/candidates.hpp"
#include "docre/model/config.hpp"
#include "docre/model/params.hpp"
#include "docre/model/vocabulary.hpp"

namespace docre::model {

// A trained variant: everything needed to score new documents.
struct TrainedModel {
  Variant variant = Variant::DocLevel;
  ModelConfig config;
  RelationSchema schema;
  Vocabulary vocab;
  ModelParams<double> params;
};

inline constexpr int kCheckpointVersion = 1;

// JSON: {format_version, variant, schema, config, vocabulary, tensors:
// {name: {rows, cols, data}}}. Doubles are written with round-trip precision.
void save_checkpoint(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_checkpoint(const std::filesystem::path& path);

// Whitespace text format `token v1 ... v_d`; rows for tokens outside the
// vocabulary are ignored. Returns the number of vocabulary rows replaced.
int load_word_vectors(const std::filesystem::path& path, const Vocabulary& vocab,
                      Matrix<double>& word_vectors);

}  // namespace docre::model
