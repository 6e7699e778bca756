#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "docre/corpus.hpp"
#include "docre/candidates.hpp"

namespace docre::model {

enum class Aggregator { LogSumExp, Max };
enum class Scope { SingleUnit, WholeDocument };

// The three trained variants: per-sentence, per-paragraph, and whole document
// with paragraphs as discourse units.
enum class Variant { SentLevel, ParaLevel, DocLevel };

std::string_view to_string(Aggregator a);
std::string_view to_string(Scope s);
std::string_view to_string(Variant v);
Aggregator parse_aggregator(std::string_view name);
Variant parse_variant(std::string_view name);

// Candidate scale a variant is trained and evaluated on.
ScaleKind candidate_scale(Variant v);

struct ModelConfig {
  int d_word = 200;
  int d_unit_index = 100;
  int lstm_hidden = 200;
  int d_mention = 400;
  int ffn_hidden = 400;
  int num_classes = 2;
  UnitKind unit_kind = UnitKind::Paragraph;
  Scope scope = Scope::WholeDocument;
  Aggregator aggregator = Aggregator::LogSumExp;
  double learning_rate = 1e-5;
  std::uint64_t seed = 13;
  int epochs = 30;
  std::optional<std::size_t> mention_tuple_cap;
  // Uniform init half-width for word vectors.
  double embedding_init = 0.05;
  // 64 or 32; 32 only affects training arithmetic.
  int precision = 64;
  // Stop after this many epochs without dev AP improvement (0 = off).
  int patience = 0;

  int d_input() const { return d_word + d_unit_index; }
  int d_hidden() const { return 2 * lstm_hidden; }

  // Throws DataError on non-positive dimensions or unsupported options.
  void validate() const;

  // Paper dimensions with the unit kind and scope set for `v`.
  static ModelConfig for_variant(Variant v);
  void apply_variant(Variant v);
};

void to_json(nlohmann::json& j, const ModelConfig& c);
void from_json(const nlohmann::json& j, ModelConfig& c);

}  // namespace docre::model
