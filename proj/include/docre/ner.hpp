#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "docre/corpus.hpp"

namespace docre {

enum class EntityType { Drug, Gene, Mutation };

std::string_view to_string(EntityType type);
EntityType parse_entity_type(std::string_view name);

// Per-type placeholder substituted for every mention of that type.
std::string_view dummy_token(EntityType type);

struct Mention {
  std::string entity_id;
  EntityType type = EntityType::Drug;
  int token_index = 0;
  int token_count = 1;
  int sentence_index = 0;
  int paragraph_index = 0;

  int end() const { return token_index + token_count; }
  bool operator==(const Mention&) const = default;
};

// A document together with the mentions grounded in its token stream.
struct AnnotatedDocument {
  Document document;
  std::vector<Mention> mentions;
};

// Case-insensitive surface form -> canonical id lookup for one entity type.
class EntityDictionary {
 public:
  explicit EntityDictionary(EntityType type) : type_(type) {}

  // Throws DataError when `surface` is already bound to a different id.
  void add(std::string_view surface, std::string_view canonical_id);
  std::optional<std::string_view> lookup(std::string_view surface) const;

  EntityType type() const { return type_; }
  std::size_t size() const { return entries_.size(); }
  // Longest surface form measured in tokens.
  int max_tokens() const { return max_tokens_; }

  // TSV `surface<TAB>canonical_id`; blank lines and `#` comments skipped.
  static EntityDictionary load(const std::filesystem::path& path, EntityType type);

 private:
  EntityType type_;
  std::unordered_map<std::string, std::string> entries_;
  int max_tokens_ = 0;
};

// ASCII lower-casing; other bytes unchanged.
std::string fold_case(std::string_view s);

// Normalized missense id ("p." stripped) when the whole token is a mutation.
std::optional<std::string> match_mutation(std::string_view token);
// Whole-token match, else the first hyphen-delimited subtoken that matches.
std::optional<std::string> find_mutation_in_token(std::string_view token);

std::vector<Mention> find_mutations(const Document& doc);

// Leftmost-longest n-gram lookup within sentences, n <= max_ngram.
std::vector<Mention> find_by_dictionary(const Document& doc, const EntityDictionary& dict,
                                        int max_ngram = 5);

// Sorts by position and drops mentions overlapping an earlier, longer one.
std::vector<Mention> resolve_overlaps(std::vector<Mention> mentions);

// Mutations plus both dictionaries, overlap-resolved and sorted.
std::vector<Mention> detect_mentions(const Document& doc, const EntityDictionary& drugs,
                                     const EntityDictionary& genes);

// Replaces every mention span with its type's dummy token and remaps mention
// coordinates into the shortened stream.
AnnotatedDocument mask(const Document& doc, std::span<const Mention> mentions);

}  // namespace docre
