#include "docre/model/config.hpp"

#include "docre/errors.hpp"

namespace docre::model {

std::string_view to_string(Aggregator a) { return a == Aggregator::LogSumExp ? "logsumexp" : "max"; }

std::string_view to_string(Scope s) {
  return s == Scope::SingleUnit ? "single_unit" : "whole_document";
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::SentLevel: return "sent";
    case Variant::ParaLevel: return "para";
    case Variant::DocLevel: return "doc";
  }
  return "?";
}

Aggregator parse_aggregator(std::string_view name) {
  if (name == "logsumexp" || name == "lse") return Aggregator::LogSumExp;
  if (name == "max") return Aggregator::Max;
  throw DataError("unknown aggregator '" + std::string(name) + "'");
}

Variant parse_variant(std::string_view name) {
  if (name == "sent") return Variant::SentLevel;
  if (name == "para") return Variant::ParaLevel;
  if (name == "doc") return Variant::DocLevel;
  throw DataError("unknown variant '" + std::string(name) + "'");
}

ScaleKind candidate_scale(Variant v) {
  switch (v) {
    case Variant::SentLevel: return ScaleKind::Sentence;
    case Variant::ParaLevel: return ScaleKind::Paragraph;
    case Variant::DocLevel: return ScaleKind::Document;
  }
  return ScaleKind::Document;
}

void ModelConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw DataError(std::string("model config: ") + name + " must be > 0");
  };
  positive(d_word, "d_word");
  positive(d_unit_index, "d_unit_index");
  positive(lstm_hidden, "lstm_hidden");
  positive(d_mention, "d_mention");
  positive(ffn_hidden, "ffn_hidden");
  if (num_classes < 2) throw DataError("model config: num_classes must be >= 2");
  if (d_unit_index % 2 != 0) throw DataError("model config: d_unit_index must be even");
  if (learning_rate < 0) throw DataError("model config: learning_rate must be >= 0");
  if (epochs < 0) throw DataError("model config: epochs must be >= 0");
  if (precision != 32 && precision != 64) throw DataError("model config: precision must be 32 or 64");
  if (mention_tuple_cap && *mention_tuple_cap == 0)
    throw DataError("model config: mention_tuple_cap must be > 0");
}

void ModelConfig::apply_variant(Variant v) {
  switch (v) {
    case Variant::SentLevel:
      unit_kind = UnitKind::Sentence;
      scope = Scope::SingleUnit;
      break;
    case Variant::ParaLevel:
      unit_kind = UnitKind::Paragraph;
      scope = Scope::SingleUnit;
      break;
    case Variant::DocLevel:
      unit_kind = UnitKind::Paragraph;
      scope = Scope::WholeDocument;
      break;
  }
}

ModelConfig ModelConfig::for_variant(Variant v) {
  ModelConfig c;
  c.apply_variant(v);
  return c;
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = {{"d_word", c.d_word},
       {"d_unit_index", c.d_unit_index},
       {"lstm_hidden", c.lstm_hidden},
       {"d_mention", c.d_mention},
       {"ffn_hidden", c.ffn_hidden},
       {"num_classes", c.num_classes},
       {"unit_kind", std::string(docre::to_string(c.unit_kind))},
       {"scope", std::string(to_string(c.scope))},
       {"aggregator", std::string(to_string(c.aggregator))},
       {"learning_rate", c.learning_rate},
       {"seed", c.seed},
       {"epochs", c.epochs},
       {"embedding_init", c.embedding_init},
       {"precision", c.precision},
       {"patience", c.patience}};
  j["mention_tuple_cap"] = c.mention_tuple_cap ? nlohmann::json(*c.mention_tuple_cap) : nlohmann::json();
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  c.d_word = j.at("d_word");
  c.d_unit_index = j.at("d_unit_index");
  c.lstm_hidden = j.at("lstm_hidden");
  c.d_mention = j.at("d_mention");
  c.ffn_hidden = j.at("ffn_hidden");
  c.num_classes = j.at("num_classes");
  c.unit_kind = j.at("unit_kind") == "sentence" ? UnitKind::Sentence : UnitKind::Paragraph;
  c.scope = j.at("scope") == "single_unit" ? Scope::SingleUnit : Scope::WholeDocument;
  c.aggregator = parse_aggregator(j.at("aggregator").get<std::string>());
  c.learning_rate = j.at("learning_rate");
  c.seed = j.at("seed");
  c.epochs = j.at("epochs");
  c.embedding_init = j.at("embedding_init");
  c.precision = j.at("precision");
  c.patience = j.at("patience");
  if (j.contains("mention_tuple_cap") && !j["mention_tuple_cap"].is_null())
    c.mention_tuple_cap = j["mention_tuple_cap"].get<std::size_t>();
  else
    c.mention_tuple_cap.reset();
}

}  // namespace docre::model
